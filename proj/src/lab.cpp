#include "tslab/lab.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <thread>

#include "tslab/bruteforce.hpp"
#include "tslab/json_io.hpp"

namespace tslab {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) { return bound ? next() % bound : 0; }

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed + 0x9E3779B97F4A7C15ull * (index + 1));
    return g.next();
}

namespace {

ModuleMap random_hom(SplitMix64& rng, const FinModule& src, const FinModule& tgt) {
    HomStructure h = hom_module(src, tgt);
    std::vector<Int> coords;
    for (const Int& f : h.module.factors)
        coords.push_back(rng.below(f.convert_to<std::uint64_t>()));
    return hom_decode(h, coords);
}

}  // namespace

Complex random_complex(const CyclicRing& ring, int degree_lo, int degree_hi,
                       std::size_t max_factors, std::uint64_t seed) {
    if (degree_lo > degree_hi) throw domain_error("random complex: empty degree range");
    SplitMix64 rng(seed);
    std::vector<Int> divs = nonunit_divisors(ring);
    std::vector<FinModule> coords;
    for (int n = degree_lo; n <= degree_hi; ++n) {
        std::size_t rank = rng.below(max_factors + 1);
        std::vector<Int> fs;
        for (std::size_t i = 0; i < rank; ++i) fs.push_back(divs[rng.below(divs.size())]);
        coords.push_back(make_module(ring, fs));
    }
    std::vector<ModuleMap> diffs;
    for (std::size_t i = 0; i + 1 < coords.size(); ++i) {
        if (i == 0 || diffs[i - 1].is_zero()) {
            diffs.push_back(random_hom(rng, coords[i], coords[i + 1]));
        } else {
            CokernelResult q = cokernel(diffs[i - 1]);
            diffs.push_back(compose(random_hom(rng, q.module, coords[i + 1]), q.proj));
        }
    }
    return make_complex(ring, degree_lo, std::move(coords), std::move(diffs));
}

std::vector<ThomasonFiltration> enumerate_filtrations(const CyclicRing& ring, int lo, int hi,
                                                      bool include_neg_inf,
                                                      bool include_pos_inf) {
    if (lo > hi) throw domain_error("filtration window: empty");
    std::vector<Cutoff> choices;
    if (include_neg_inf) choices.push_back(Cutoff::neg_inf());
    for (int n = lo; n <= hi; ++n) choices.push_back(Cutoff::at(n));
    if (include_pos_inf) choices.push_back(Cutoff::pos_inf());

    std::vector<Int> primes;
    for (const auto& [p, e] : ring.primes) {
        (void)e;
        primes.push_back(p);
    }
    std::vector<ThomasonFiltration> out;
    std::vector<std::size_t> idx(primes.size(), 0);
    while (true) {
        std::map<Int, Cutoff> cuts;
        for (std::size_t i = 0; i < primes.size(); ++i) cuts[primes[i]] = choices[idx[i]];
        out.push_back(make_filtration(ring, cuts));
        std::size_t i = 0;
        for (; i < primes.size(); ++i) {
            if (++idx[i] < choices.size()) break;
            idx[i] = 0;
        }
        if (i == primes.size()) break;
    }
    return out;
}

namespace {

using CaseFn = std::function<json()>;  // null result = pass
using FiltrationList = std::shared_ptr<const std::vector<ThomasonFiltration>>;

enum Family : std::uint64_t {
    fam_oracle = 1,
    fam_truncation = 2,
    fam_stalk_hom = 3,
    fam_envelope = 4,
    fam_duality = 5,
    fam_rigidity = 6,
    fam_tower = 7,
    fam_validity = 8,
};

struct RingCtx {
    CyclicRing ring;
    FiltrationList with_neg;  // window ∪ {−∞}
    FiltrationList finite;
    FiltrationList full;      // window ∪ {±∞}
};

std::uint64_t case_seed(const SuiteConfig& cfg, Family fam, const CyclicRing& ring,
                        std::uint64_t i) {
    std::uint64_t tag = fam * 1000003ull + ring.modulus.convert_to<std::uint64_t>();
    return split_seed(split_seed(cfg.seed, tag), i);
}

json exhibit(const char* property, const CyclicRing& ring) {
    return json{{"property", property}, {"ring", to_json(ring)}};
}

bool sup_below_cutoff(const std::optional<int>& sup, const Cutoff& c) {
    if (c.kind == Cutoff::Kind::pos_inf) return !sup.has_value();
    if (c.kind == Cutoff::Kind::neg_inf) return true;
    return !sup.has_value() || *sup < -c.value;
}

bool cutoff_le(const Cutoff& a, const Cutoff& b) {
    if (a.kind == Cutoff::Kind::neg_inf || b.kind == Cutoff::Kind::pos_inf) return true;
    if (a.kind == Cutoff::Kind::pos_inf || b.kind == Cutoff::Kind::neg_inf) return false;
    return a.value <= b.value;
}

void add_oracle_agreement(const SuiteConfig& cfg, const RingCtx& cx, std::vector<CaseFn>& out) {
    for (std::size_t i = 0; i < cfg.corpus; ++i) {
        std::uint64_t s = case_seed(cfg, fam_oracle, cx.ring, i);
        out.push_back([cfg, ring = cx.ring, fs = cx.with_neg, s]() -> json {
            Complex x = random_complex(ring, cfg.degree_lo, cfg.degree_hi, cfg.max_factors, s);
            MembershipProfile prof = membership_profile(x);
            for (std::size_t j = 0; j < fs->size(); ++j) {
                const ThomasonFiltration& f = (*fs)[j];
                bool cech = profile_coaisle_cech(prof, f);
                bool hom = profile_coaisle_hom(prof, f);
                bool red = profile_coaisle_reduced(prof, f);
                bool direct_ok = true;
                json direct;
                if (j % 25 == 0) {
                    bool dc = in_coaisle_cech(x, f).ok;
                    bool dh = in_coaisle_hom(x, f).ok;
                    bool dg = in_coaisle_reduced(x, f);
                    direct_ok = dc == cech && dh == hom && dg == red;
                    direct = json{{"cech", dc}, {"hom", dh}, {"reduced", dg}};
                }
                if (cech != hom || cech != red || !direct_ok) {
                    json e = exhibit("oracle_agreement", ring);
                    e["complex"] = to_json(x);
                    e["filtration"] = to_json(f);
                    e["verdicts"] = json{{"cech", cech}, {"hom", hom}, {"reduced", red}};
                    if (!direct.is_null()) e["direct"] = direct;
                    return e;
                }
            }
            return {};
        });
    }
}

void add_round_trip(const SuiteConfig&, const RingCtx& cx, std::vector<CaseFn>& out) {
    for (const ThomasonFiltration& f : *cx.finite) {
        out.push_back([ring = cx.ring, f]() -> json {
            ThomasonFiltration back = filtration_of_generators(ring, generators_of(f));
            if (back == f) return {};
            json e = exhibit("round_trip", ring);
            e["filtration"] = to_json(f);
            e["recovered"] = to_json(back);
            return e;
        });
    }
}

void add_minimality(const SuiteConfig&, const RingCtx& cx, std::vector<CaseFn>& out) {
    for (const ThomasonFiltration& f : *cx.finite) {
        out.push_back([ring = cx.ring, f, all = cx.full]() -> json {
            std::vector<Complex> gens = generators_of(f);
            std::vector<std::map<int, SpecSubset>> supports;
            for (const Complex& s : gens) {
                std::map<int, SpecSubset> m;
                for (const auto& [n, h] : cohomology(s).parts) m.emplace(n, support(h));
                supports.push_back(std::move(m));
            }
            for (std::size_t j = 0; j < all->size(); ++j) {
                const ThomasonFiltration& psi = (*all)[j];
                bool inside = true;
                for (const auto& m : supports)
                    for (const auto& [n, sp] : m)
                        if (!sp.subset_of(psi.phi(n))) inside = false;
                if (j % 10 == 0) {
                    bool direct = true;
                    for (const Complex& s : gens)
                        if (!in_aisle(s, psi).ok) direct = false;
                    if (direct != inside) {
                        json e = exhibit("minimality", ring);
                        e["filtration"] = to_json(f);
                        e["candidate"] = to_json(psi);
                        e["note"] = "support cache disagrees with in_aisle";
                        return e;
                    }
                }
                if (!inside) continue;
                for (const auto& [p, c] : f.cutoffs)
                    if (!cutoff_le(c, psi.cutoffs.at(p))) {
                        json e = exhibit("minimality", ring);
                        e["filtration"] = to_json(f);
                        e["candidate"] = to_json(psi);
                        return e;
                    }
            }
            return {};
        });
    }
}

void add_generation(const SuiteConfig&, const RingCtx& cx, std::vector<CaseFn>& out) {
    for (const Int& d : nonunit_divisors(cx.ring)) {
        out.push_back([ring = cx.ring, d]() -> json {
            ThomasonFiltration base = filtration_of_generators(ring, {koszul(ring, {d})});
            Int dk = 1;
            for (int k = 1; k <= 3; ++k) {
                dk = dk * d;
                Complex s = stalk_complex(ring, cyclic_module(ring, dk), 0);
                if (!(filtration_of_generators(ring, {s}) == base)) {
                    json e = exhibit("generation", ring);
                    e["divisor"] = d.convert_to<long long>();
                    e["power"] = k;
                    return e;
                }
            }
            return {};
        });
    }
}

void add_truncation(const SuiteConfig& cfg, const RingCtx& cx, std::vector<CaseFn>& out) {
    for (std::size_t i = 0; i < cfg.corpus; ++i) {
        std::uint64_t s = case_seed(cfg, fam_truncation, cx.ring, i);
        out.push_back([cfg, ring = cx.ring, all = cx.full, s]() -> json {
            SplitMix64 pick(s);
            std::uint64_t xseed = pick.next();
            const ThomasonFiltration& f = (*all)[pick.below(all->size())];
            Complex x = random_complex(ring, cfg.degree_lo, cfg.degree_hi, cfg.max_factors, xseed);
            json e = exhibit("truncation", ring);
            e["complex"] = to_json(x);
            e["filtration"] = to_json(f);
            try {
                TruncationTriangle t = truncate_t(x, f);
                if (!hom_derived(t.u_part, t.v_part, 0).is_zero()) {
                    e["note"] = "parts are not orthogonal";
                    return e;
                }
            } catch (const internal_error& err) {
                e["note"] = err.what();
                return e;
            }
            return {};
        });
    }
}

void add_stalk_hom(const SuiteConfig& cfg, const RingCtx& cx, std::vector<CaseFn>& out) {
    for (std::size_t i = 0; i < cfg.corpus; ++i) {
        std::uint64_t s = case_seed(cfg, fam_stalk_hom, cx.ring, i);
        out.push_back([cfg, ring = cx.ring, s]() -> json {
            Complex x = random_complex(ring, cfg.degree_lo, cfg.degree_hi, cfg.max_factors, s);
            for (const auto& [p, exp] : ring.primes) {
                (void)exp;
                FinModule e = make_module(ring, {ring.primary_part(p)});
                for (int n = x.min_degree - 1; n <= x.top_degree() + 1; ++n) {
                    StalkHomResult r = stalk_hom_check(x, e, n);
                    if (!r.confirmed) {
                        json ex = exhibit("stalk_hom", ring);
                        ex["complex"] = to_json(x);
                        ex["injective"] = to_json(e);
                        ex["degree"] = n;
                        return ex;
                    }
                }
            }
            return {};
        });
    }
}

void add_envelope(const SuiteConfig& cfg, const RingCtx& cx, std::vector<CaseFn>& out) {
    for (std::size_t i = 0; i < cfg.corpus; ++i) {
        std::uint64_t s = case_seed(cfg, fam_envelope, cx.ring, i);
        out.push_back([cfg, ring = cx.ring, fs = cx.finite, s]() -> json {
            SplitMix64 pick(s);
            std::uint64_t xseed = pick.next();
            const ThomasonFiltration& f = (*fs)[pick.below(fs->size())];
            Complex x = random_complex(ring, cfg.degree_lo, cfg.degree_hi, cfg.max_factors, xseed);
            Complex v = truncate_t(x, f).v_part;
            json e = exhibit("envelope", ring);
            e["complex"] = to_json(x);
            e["filtration"] = to_json(f);
            GradedModule hv = cohomology(v);
            if (!hv.is_zero()) {
                int k = *hv.lowest();
                Complex st = stalk_complex(ring, injective_envelope(hv.at(k)).module, k);
                if (!in_coaisle_cech(st, f).ok || !in_coaisle_hom(st, f).ok ||
                    !in_coaisle_reduced(st, f)) {
                    e["note"] = "envelope stalk fails a coaisle oracle";
                    return e;
                }
            }
            for (const CoresolutionStep& step : coresolve_in_coaisle(v, f, 5))
                if (!step.stalk_ok) {
                    e["note"] = "coresolution stalk fails a coaisle oracle";
                    e["degree"] = step.degree;
                    return e;
                }
            return {};
        });
    }
}

void add_duality(const SuiteConfig& cfg, const RingCtx& cx, std::vector<CaseFn>& out) {
    for (std::size_t i = 0; i < cfg.corpus; ++i) {
        std::uint64_t s = case_seed(cfg, fam_duality, cx.ring, i);
        out.push_back([cfg, ring = cx.ring, fs = cx.with_neg, s]() -> json {
            Complex x = random_complex(ring, cfg.degree_lo, cfg.degree_hi, cfg.max_factors, s);
            MembershipProfile prof = membership_profile(x);
            // independent path: Hom against compact duals rather than tensor
            std::map<Int, std::optional<int>> dual_sup;
            for (const Int& d : nonunit_divisors(ring))
                dual_sup[d] = cohomology(
                                  hom_complex(compact_dual(koszul(ring, {d})), x))
                                  .highest();
            for (std::size_t j = 0; j < fs->size(); ++j) {
                const ThomasonFiltration& f = (*fs)[j];
                bool tensor_side = profile_co_t(prof, f);
                bool hom_side = true;
                for (const auto& [d, sup] : dual_sup)
                    if (!sup_below_cutoff(sup, f.divisor_cutoff(d))) hom_side = false;
                bool direct_ok = true;
                if (j % 25 == 0) direct_ok = in_co_t_coaisle(x, f) == tensor_side;
                if (tensor_side != hom_side || !direct_ok) {
                    json e = exhibit("duality", ring);
                    e["complex"] = to_json(x);
                    e["filtration"] = to_json(f);
                    e["verdicts"] = json{{"tensor", tensor_side}, {"hom_dual", hom_side}};
                    return e;
                }
            }
            return {};
        });
    }
}

void add_rigidity(const SuiteConfig& cfg, const RingCtx& cx, std::vector<CaseFn>& out) {
    for (std::size_t i = 0; i < cfg.corpus; ++i) {
        std::uint64_t s = case_seed(cfg, fam_rigidity, cx.ring, i);
        out.push_back([cfg, ring = cx.ring, fs = cx.finite, s]() -> json {
            SplitMix64 g(s);
            Int a = g.below(ring.modulus.convert_to<std::uint64_t>());
            Int b = g.below(ring.modulus.convert_to<std::uint64_t>());
            int up = static_cast<int>(g.below(3));
            Complex freec = shift(koszul(ring, {a, b}), up);
            std::uint64_t xseed = g.next();
            const ThomasonFiltration& f = (*fs)[g.below(fs->size())];
            Complex base = random_complex(ring, cfg.degree_lo, cfg.degree_hi, cfg.max_factors, xseed);
            Complex u = truncate_t(base, f).u_part;
            if (in_aisle(u, f).ok && in_aisle(tensor_complexes(freec, u), f).ok) return {};
            json e = exhibit("rigidity", ring);
            e["free_complex"] = to_json(freec);
            e["aisle_object"] = to_json(u);
            e["filtration"] = to_json(f);
            return e;
        });
    }
}

void add_tower(const SuiteConfig& cfg, const RingCtx& cx, std::vector<CaseFn>& out) {
    for (std::size_t i = 0; i < cfg.corpus; ++i) {
        std::uint64_t s = case_seed(cfg, fam_tower, cx.ring, i);
        out.push_back([cfg, ring = cx.ring, s]() -> json {
            Complex x = random_complex(ring, cfg.degree_lo, cfg.degree_hi, cfg.max_factors, s);
            for (Int el = 0; el < ring.modulus; ++el) {
                Complex lhs = tensor_complexes(cech_tilde(ring, {el}), x);
                const int len = 6;
                std::vector<Complex> towers;
                std::vector<ChainMap> maps;
                Int pw = 1;
                std::vector<Int> pows;
                for (int m = 1; m <= len; ++m) {
                    pw = mod_norm(pw * el, ring.modulus);
                    pows.push_back(pw);
                    towers.push_back(compact_dual(koszul(ring, {pw})));
                }
                for (int m = 0; m + 1 < len; ++m) {
                    FinModule f1 = free_module(ring, 1);
                    std::map<int, ModuleMap> comps{
                        {0, ModuleMap::identity(f1)},
                        {1, ModuleMap::scalar(f1, el)}};
                    maps.push_back(tensor_chain_map(
                        make_chain_map(towers[m], towers[m + 1], std::move(comps)), x));
                }
                std::vector<Complex> tensored;
                for (int m = 0; m < len; ++m)
                    tensored.push_back(m + 1 < len ? maps[m].source : maps[len - 2].target);
                int lo = x.min_degree - 2, hi = x.is_zero() ? 0 : x.top_degree() + 2;
                for (int deg = lo; deg <= hi; ++deg) {
                    std::vector<FinModule> ms;
                    std::vector<ModuleMap> fs;
                    for (int m = 0; m < len; ++m) ms.push_back(cohomology_at(tensored[m], deg));
                    for (int m = 0; m + 1 < len; ++m)
                        fs.push_back(cohomology_map(maps[m], deg));
                    json e = exhibit("tower", ring);
                    e["element"] = el.convert_to<long long>();
                    e["complex"] = to_json(x);
                    e["degree"] = deg;
                    try {
                        if (!isomorphic(tower_colimit(ms, fs), cohomology_at(lhs, deg))) {
                            e["note"] = "colimit differs from the localization triangle";
                            return e;
                        }
                    } catch (const domain_error& err) {
                        e["note"] = err.what();
                        return e;
                    }
                }
            }
            return {};
        });
    }
}

void add_random_validity(const SuiteConfig& cfg, const RingCtx& cx, std::vector<CaseFn>& out) {
    for (std::size_t i = 0; i < cfg.corpus; ++i) {
        std::uint64_t s = case_seed(cfg, fam_validity, cx.ring, i);
        out.push_back([cfg, ring = cx.ring, s]() -> json {
            Complex x = random_complex(ring, cfg.degree_lo, cfg.degree_hi, cfg.max_factors, s);
            bool ok = true;
            if (!x.is_zero()) {
                ok = !x.coords.front().is_zero() && !x.coords.back().is_zero() &&
                     x.diffs.size() + 1 == x.coords.size();
                for (int n = x.min_degree; n < x.top_degree(); ++n)
                    if (!compose(x.diff_at(n + 1), x.diff_at(n)).is_zero()) ok = false;
                Complex rebuilt = make_complex(ring, x.min_degree, x.coords, x.diffs);
                if (!(rebuilt == x)) ok = false;
            }
            if (ok) return {};
            json e = exhibit("random_validity", ring);
            e["complex"] = to_json(x);
            return e;
        });
    }
}

void add_worked_examples(std::vector<CaseFn>& out) {
    for (const Fixture& f : worked_examples()) {
        out.push_back([f]() -> json {
            if (f.pass) return {};
            return json{{"property", "worked_examples"}, {"fixture", f.name}, {"detail", f.detail}};
        });
    }
}

const std::vector<std::string> kProperties{
    "oracle_agreement", "round_trip", "minimality", "generation",
    "truncation",       "stalk_hom",  "envelope",   "duality",
    "rigidity",         "tower",      "random_validity", "worked_examples"};

}  // namespace

const std::vector<std::string>& suite_property_names() { return kProperties; }

SuiteConfig::SuiteConfig() : properties(kProperties) {}

SuiteReport run_suite(const SuiteConfig& cfg) {
    if (cfg.window_lo > cfg.window_hi) throw domain_error("config: empty filtration window");
    if (cfg.degree_lo > cfg.degree_hi) throw domain_error("config: empty degree range");
    if (cfg.jobs < 1) throw domain_error("config: jobs must be positive");
    if (cfg.rings.empty()) throw domain_error("config: no rings selected");
    for (const std::string& p : cfg.properties)
        if (std::find(kProperties.begin(), kProperties.end(), p) == kProperties.end())
            throw domain_error("config: unknown property '" + p + "'");

    auto t0 = std::chrono::steady_clock::now();

    std::vector<RingCtx> ctxs;
    std::string rings_desc;
    for (long long n : cfg.rings) {
        CyclicRing r = make_ring(n);
        ctxs.push_back(
            {r,
             std::make_shared<const std::vector<ThomasonFiltration>>(
                 enumerate_filtrations(r, cfg.window_lo, cfg.window_hi, true, false)),
             std::make_shared<const std::vector<ThomasonFiltration>>(
                 enumerate_filtrations(r, cfg.window_lo, cfg.window_hi, false, false)),
             std::make_shared<const std::vector<ThomasonFiltration>>(
                 enumerate_filtrations(r, cfg.window_lo, cfg.window_hi, true, true))});
        if (!rings_desc.empty()) rings_desc += ", ";
        rings_desc += "Z/" + std::to_string(n);
    }

    auto selected = [&](const std::string& name) {
        return std::find(cfg.properties.begin(), cfg.properties.end(), name) !=
               cfg.properties.end();
    };

    std::vector<CaseFn> cases;
    for (const std::string& name : kProperties) {
        if (!selected(name)) continue;
        if (name == "worked_examples") {
            add_worked_examples(cases);
            continue;
        }
        for (const RingCtx& cx : ctxs) {
            if (name == "oracle_agreement") add_oracle_agreement(cfg, cx, cases);
            else if (name == "round_trip") add_round_trip(cfg, cx, cases);
            else if (name == "minimality") add_minimality(cfg, cx, cases);
            else if (name == "generation") add_generation(cfg, cx, cases);
            else if (name == "truncation") add_truncation(cfg, cx, cases);
            else if (name == "stalk_hom") add_stalk_hom(cfg, cx, cases);
            else if (name == "envelope") add_envelope(cfg, cx, cases);
            else if (name == "duality") add_duality(cfg, cx, cases);
            else if (name == "rigidity") add_rigidity(cfg, cx, cases);
            else if (name == "tower") add_tower(cfg, cx, cases);
            else if (name == "random_validity") add_random_validity(cfg, cx, cases);
        }
    }

    std::vector<json> results(cases.size());
    auto work = [&](std::size_t i) {
        try {
            results[i] = cases[i]();
        } catch (const std::exception& e) {
            results[i] = json{{"property", "exception"}, {"error", e.what()}};
        }
    };
    if (cfg.jobs == 1 || cases.size() < 2) {
        for (std::size_t i = 0; i < cases.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < cfg.jobs; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < cases.size(); i = next++) work(i);
            });
        for (std::thread& t : pool) t.join();
    }

    SuiteReport rep;
    rep.rings = rings_desc;
    rep.seed = cfg.seed;
    for (const json& r : results) {
        ++rep.cases;
        if (r.is_null()) {
            ++rep.passed;
        } else {
            ++rep.failed;
            rep.exhibits.push_back(r);
        }
    }
    rep.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return rep;
}

json to_json(const SuiteConfig& c) {
    json props = json::array();
    for (const std::string& p : c.properties) props.push_back(p);
    return json{{"schema", 1},
                {"rings", c.rings},
                {"window", {c.window_lo, c.window_hi}},
                {"corpus", c.corpus},
                {"seed", c.seed},
                {"properties", props},
                {"jobs", c.jobs},
                {"degree_range", {c.degree_lo, c.degree_hi}},
                {"max_factors", c.max_factors}};
}

SuiteConfig suite_config_from_json(const json& j) {
    if (!j.is_object()) throw domain_error("config: expected object");
    if (j.contains("schema") && j.at("schema") != 1)
        throw domain_error("/schema: unsupported version");
    SuiteConfig c;
    if (j.contains("rings")) {
        if (!j.at("rings").is_array()) throw domain_error("/rings: expected array");
        c.rings.clear();
        for (const json& v : j.at("rings")) {
            if (!v.is_number_integer()) throw domain_error("/rings: expected integers");
            c.rings.push_back(v.get<long long>());
        }
    }
    auto pair_field = [&](const char* key, int& lo, int& hi) {
        if (!j.contains(key)) return;
        const json& v = j.at(key);
        if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
            !v[1].is_number_integer())
            throw domain_error(std::string("/") + key + ": expected [lo, hi]");
        lo = v[0].get<int>();
        hi = v[1].get<int>();
    };
    pair_field("window", c.window_lo, c.window_hi);
    pair_field("degree_range", c.degree_lo, c.degree_hi);
    if (j.contains("corpus")) c.corpus = j.at("corpus").get<std::size_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<int>();
    if (j.contains("max_factors")) c.max_factors = j.at("max_factors").get<std::size_t>();
    if (j.contains("properties")) {
        if (!j.at("properties").is_array()) throw domain_error("/properties: expected array");
        c.properties.clear();
        for (const json& v : j.at("properties")) {
            if (!v.is_string()) throw domain_error("/properties: expected strings");
            c.properties.push_back(v.get<std::string>());
        }
    }
    return c;
}

json to_json(const SuiteReport& r) {
    json ex = json::array();
    for (const json& e : r.exhibits) ex.push_back(e);
    return json{{"schema", 1}, {"rings", r.rings},   {"seed", r.seed},
                {"cases", r.cases}, {"passed", r.passed}, {"failed", r.failed},
                {"exhibits", ex},   {"wall_ms", r.wall_ms}};
}

std::vector<Fixture> worked_examples() {
    std::vector<Fixture> out;
    auto add = [&out](std::string name, std::string detail, bool pass) {
        out.push_back({std::move(name), std::move(detail), pass});
    };
    CyclicRing r12 = make_ring(12), r4 = make_ring(4), r36 = make_ring(36);

    {
        Complex k2 = koszul(r12, {Int(2)});
        auto im = brute::image_set(k2.diff_at(-1));
        FinModule h0 = cohomology_at(k2, 0);
        add("koszul-H0", "H^0(K(2)) over Z/12 is Z/2, cokernel order by element count",
            im.size() == 6 && isomorphic(h0, make_module(r12, {2})) &&
                h0.order() * Int(im.size()) == 12);
    }
    {
        Complex c2 = cech_tilde(r12, {Int(2)});
        auto ker = brute::kernel_set(c2.diff_at(0));
        add("cech-H0", "H^0 of [Z/12 -> Z/3] is Z/4 by kernel enumeration",
            ker.size() == 4 && isomorphic(cohomology_at(c2, 0), make_module(r12, {4})));
    }
    {
        ThomasonFiltration f =
            make_filtration(r12, {{2, Cutoff::at(1)}, {3, Cutoff::at(0)}});
        TruncationTriangle t = truncate_t(stalk_complex(r12, free_module(r12, 1), 1), f);
        add("trunc-split", "the Z/12 stalk in degree 1 splits into Z/4 and Z/3 parts",
            isomorphic(cohomology_at(t.u_part, 1), make_module(r12, {4})) &&
                isomorphic(cohomology_at(t.v_part, 1), make_module(r12, {3})));
    }
    {
        Int e2 = crt_idempotent(r36, 2), e3 = crt_idempotent(r36, 3);
        add("crt-idempotents", "orthogonal idempotents over Z/36 are 9 and 28",
            e2 == 9 && e3 == 28 && mod_norm(e2 + e3, 36) == 1 &&
                mod_norm(e2 * e2 - e2, 36) == 0);
    }
    {
        FinModule a = make_module(r12, {4}), b = make_module(r12, {6});
        add("hom-count", "|Hom(Z/4, Z/6)| = 2 over Z/12, counted two ways",
            hom_module(a, b).module.order() == brute::hom_count(a, b) &&
                brute::hom_count(a, b) == 2);
    }
    {
        FinModule m = make_module(r12, {12});
        ModuleMap two = ModuleMap::scalar(m, 2);
        add("tower-colimit", "colim(Z/12 -2-> Z/12 -2-> ...) = Z/3",
            isomorphic(tower_colimit({m, m, m, m, m}, {two, two, two, two}),
                       make_module(r12, {3})));
    }
    {
        Envelope e = injective_envelope(make_module(r4, {2}));
        add("envelope-essential", "E(Z/2) over Z/4 is Z/4 and the embedding is essential",
            isomorphic(e.module, make_module(r4, {4})) && brute::essential_embedding(e.embed));
    }
    {
        FinModule m = make_module(r12, {12});
        SubquotientResult sq =
            subquotient(ModuleMap::scalar(m, 4), ModuleMap::scalar(m, 6));
        auto ker = brute::kernel_set(ModuleMap::scalar(m, 6));
        auto im = brute::image_set(ModuleMap::scalar(m, 4));
        add("subquotient", "ker(mult-6)/im(mult-4) over Z/12 is Z/2",
            isomorphic(sq.module, make_module(r12, {2})) && ker.size() == 6 &&
                im.size() == 3 && sq.module.order() * Int(im.size()) == Int(ker.size()));
    }
    {
        Complex k = tensor_complexes(koszul(r12, {Int(2)}), koszul(r12, {Int(3)}));
        add("koszul-coprime-acyclic", "K(2) tensor K(3) over Z/12 is acyclic with middle rank 2",
            is_acyclic(k) && k.coord_at(-1).rank() == 2);
    }
    {
        Complex k2 = koszul(r12, {Int(2)});
        Complex dd = compact_dual(compact_dual(k2));
        add("double-dual", "K(2)** has the coordinates and cohomology of K(2)",
            dd.coords == k2.coords && same_cohomology(dd, k2));
    }
    return out;
}

}  // namespace tslab
