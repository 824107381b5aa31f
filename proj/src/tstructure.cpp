#include "tslab/tstructure.hpp"

#include <algorithm>

namespace tslab {

namespace {

// Y ∈ D^{>c}: infimum of cohomology strictly above the cutoff.
bool satisfies_above(const std::optional<int>& inf, const Cutoff& c) {
    if (c.kind == Cutoff::Kind::pos_inf) return !inf.has_value();
    if (c.kind == Cutoff::Kind::neg_inf) return true;
    return !inf.has_value() || *inf > c.value;
}

// Y ∈ D^{<−c}: supremum of cohomology strictly below −cutoff.
bool satisfies_below(const std::optional<int>& sup, const Cutoff& c) {
    if (c.kind == Cutoff::Kind::pos_inf) return !sup.has_value();
    if (c.kind == Cutoff::Kind::neg_inf) return true;
    return !sup.has_value() || *sup < -c.value;
}

void check_ring(const Complex& x, const ThomasonFiltration& f) {
    if (x.ring.modulus != f.ring.modulus) throw domain_error("ring mismatch");
}

}  // namespace

Cutoff min_cutoff(const Cutoff& a, const Cutoff& b) {
    if (a.kind == Cutoff::Kind::neg_inf || b.kind == Cutoff::Kind::neg_inf)
        return Cutoff::neg_inf();
    if (a.kind == Cutoff::Kind::pos_inf) return b;
    if (b.kind == Cutoff::Kind::pos_inf) return a;
    return Cutoff::at(std::min(a.value, b.value));
}

SpecSubset ThomasonFiltration::phi(int n) const {
    std::vector<Int> ps;
    for (const auto& [p, c] : cutoffs)
        if (c.admits(n)) ps.push_back(p);
    return make_subset(ring, ps);
}

Cutoff ThomasonFiltration::divisor_cutoff(const Int& d) const {
    Cutoff c = Cutoff::pos_inf();
    for (const auto& [p, cut] : cutoffs)
        if (d % p == 0) c = min_cutoff(c, cut);
    return c;
}

ThomasonFiltration make_filtration(const CyclicRing& ring, const std::map<Int, Cutoff>& cutoffs) {
    ThomasonFiltration f{ring, {}};
    for (const auto& [p, e] : ring.primes) {
        (void)e;
        f.cutoffs.emplace(p, Cutoff::neg_inf());
    }
    for (const auto& [p, c] : cutoffs) {
        auto it = f.cutoffs.find(p);
        if (it == f.cutoffs.end()) throw domain_error("filtration: unknown prime");
        it->second = c;
    }
    return f;
}

ThomasonFiltration filtration_from_jumps(const CyclicRing& ring,
                                         const std::vector<FiltrationJump>& jumps,
                                         const std::optional<std::vector<Int>>& below,
                                         const std::vector<Int>& above) {
    SpecSubset below_set = below ? make_subset(ring, *below) : spec_of(ring);
    SpecSubset above_set = make_subset(ring, above);

    std::vector<SpecSubset> sets;
    for (const FiltrationJump& j : jumps) sets.push_back(make_subset(ring, j.primes));
    for (std::size_t i = 0; i + 1 < jumps.size(); ++i)
        if (jumps[i].degree >= jumps[i + 1].degree)
            throw domain_error("filtration: jump degrees must increase");

    const SpecSubset* prev = &below_set;
    for (const SpecSubset& s : sets) {
        if (!s.subset_of(*prev)) throw domain_error("filtration: jumps must be decreasing");
        prev = &s;
    }
    if (!above_set.subset_of(*prev)) throw domain_error("filtration: jumps must be decreasing");

    std::map<Int, Cutoff> cutoffs;
    for (const auto& [p, e] : ring.primes) {
        (void)e;
        if (above_set.contains(p)) {
            cutoffs.emplace(p, Cutoff::pos_inf());
            continue;
        }
        std::optional<int> top;
        for (std::size_t i = sets.size(); i-- > 0;) {
            if (sets[i].contains(p)) {
                top = (i + 1 < jumps.size()) ? jumps[i + 1].degree - 1 : jumps[i].degree;
                break;
            }
        }
        if (!top && below_set.contains(p) && !jumps.empty()) top = jumps.front().degree - 1;
        cutoffs.emplace(p, top ? Cutoff::at(*top) : Cutoff::neg_inf());
    }
    return make_filtration(ring, cutoffs);
}

AisleReport in_aisle(const Complex& x, const ThomasonFiltration& f) {
    static_assert(CyclicRing::noetherian_backend,
                  "support-described aisles require a noetherian backend");
    check_ring(x, f);
    AisleReport r;
    for (const auto& [n, h] : cohomology(x).parts) {
        bool ok = support(h).subset_of(f.phi(n));
        r.degrees.emplace(n, ok);
        if (!ok) r.ok = false;
    }
    return r;
}

CoaisleReport in_coaisle_cech(const Complex& x, const ThomasonFiltration& f) {
    check_ring(x, f);
    for (const Int& d : nonunit_divisors(f.ring)) {
        std::optional<int> inf = cohomology(tensor_complexes(cech_tilde(f.ring, {d}), x)).lowest();
        if (!satisfies_above(inf, f.divisor_cutoff(d))) return {false, d, inf};
    }
    return {};
}

CoaisleReport in_coaisle_hom(const Complex& x, const ThomasonFiltration& f) {
    check_ring(x, f);
    if (x.is_zero()) return {};
    for (const Int& d : nonunit_divisors(f.ring)) {
        Cutoff c = f.divisor_cutoff(d);
        if (c.kind == Cutoff::Kind::neg_inf) continue;
        Complex hc = hom_complex(koszul(f.ring, {d}), x);
        int lo = x.min_degree - 3;
        int hi = x.top_degree() + 1;
        if (c.is_finite()) hi = std::min(hi, c.value);
        for (int k = lo; k <= hi; ++k)
            if (!cohomology_at(hc, k).is_zero()) return {false, d, k};
    }
    return {};
}

TorsionComplex torsion_subcomplex(const Complex& x, const SpecSubset& ps) {
    if (x.is_zero()) return {x, zero_chain_map(x, x)};
    std::vector<TorsionPart> parts;
    for (int n = x.min_degree; n <= x.top_degree(); ++n)
        parts.push_back(torsion_part(x.coord_at(n), ps));
    std::vector<FinModule> coords;
    std::vector<ModuleMap> diffs;
    for (const TorsionPart& t : parts) coords.push_back(t.module);
    for (std::size_t i = 0; i + 1 < parts.size(); ++i)
        diffs.push_back(factor_through_mono(
            parts[i + 1].incl, compose(x.diffs[i], parts[i].incl)));
    Complex part = make_complex(x.ring, x.min_degree, std::move(coords), std::move(diffs));
    std::map<int, ModuleMap> comps;
    for (int n = x.min_degree; n <= x.top_degree(); ++n) {
        const TorsionPart& t = parts[static_cast<std::size_t>(n - x.min_degree)];
        if (!t.module.is_zero()) comps.emplace(n, t.incl);
    }
    return {part, make_chain_map(part, x, std::move(comps))};
}

bool in_coaisle_reduced(const Complex& x, const ThomasonFiltration& f) {
    check_ring(x, f);
    for (const auto& [p, c] : f.cutoffs) {
        TorsionComplex g = torsion_subcomplex(x, make_subset(f.ring, {p}));
        if (!satisfies_above(cohomology(g.part).lowest(), c)) return false;
    }
    return true;
}

bool in_co_t_coaisle(const Complex& x, const ThomasonFiltration& f) {
    check_ring(x, f);
    for (const Int& d : nonunit_divisors(f.ring)) {
        std::optional<int> sup = cohomology(tensor_complexes(koszul(f.ring, {d}), x)).highest();
        if (!satisfies_below(sup, f.divisor_cutoff(d))) return false;
    }
    return true;
}

TruncationTriangle truncate_t(const Complex& x, const ThomasonFiltration& f) {
    check_ring(x, f);
    const CyclicRing& ring = f.ring;

    std::vector<Complex> u_parts, v_parts;
    std::vector<ChainMap> into_gamma;   // u_p → Γ_p X
    std::vector<ChainMap> onto_v;       // Γ_p X → v_p
    std::vector<ChainMap> gamma_incl;   // Γ_p X → X
    std::vector<ChainMap> gamma_split;  // X → Γ_p X

    for (const auto& [p, c] : f.cutoffs) {
        TorsionComplex g = torsion_subcomplex(x, make_subset(ring, {p}));
        ChainMap split = [&] {
            std::map<int, ModuleMap> comps;
            Int ep = crt_idempotent(ring, p);
            for (int n = g.part.min_degree; !g.part.is_zero() && n <= g.part.top_degree(); ++n) {
                if (g.part.coord_at(n).is_zero()) continue;
                comps.emplace(n, factor_through_mono(
                                     g.incl.component(n),
                                     ModuleMap::scalar(x.coord_at(n), ep)));
            }
            return make_chain_map(x, g.part, std::move(comps));
        }();
        if (c.kind == Cutoff::Kind::pos_inf) {
            u_parts.push_back(g.part);
            into_gamma.push_back(identity_chain_map(g.part));
            v_parts.push_back(zero_complex(ring));
            onto_v.push_back(zero_chain_map(g.part, zero_complex(ring)));
        } else if (c.kind == Cutoff::Kind::neg_inf) {
            u_parts.push_back(zero_complex(ring));
            into_gamma.push_back(zero_chain_map(zero_complex(ring), g.part));
            v_parts.push_back(g.part);
            onto_v.push_back(identity_chain_map(g.part));
        } else {
            TruncationResult le = soft_truncate(g.part, c.value, TruncSide::le);
            TruncationResult gt = soft_truncate(g.part, c.value, TruncSide::gt);
            u_parts.push_back(le.part);
            into_gamma.push_back(le.cmp);
            v_parts.push_back(gt.part);
            onto_v.push_back(gt.cmp);
        }
        gamma_incl.push_back(g.incl);
        gamma_split.push_back(split);
    }

    DirectSumComplex u = direct_sum_complexes(ring, u_parts);
    DirectSumComplex v = direct_sum_complexes(ring, v_parts);

    std::map<int, ModuleMap> to_input_comps;
    for (int n = u.total.min_degree; !u.total.is_zero() && n <= u.total.top_degree(); ++n) {
        if (u.total.coord_at(n).is_zero() || x.coord_at(n).is_zero()) continue;
        ModuleMap acc = ModuleMap::zero(u.total.coord_at(n), x.coord_at(n));
        for (std::size_t i = 0; i < u_parts.size(); ++i)
            acc = add(acc, compose(gamma_incl[i].component(n),
                                   compose(into_gamma[i].component(n),
                                           u.projs[i].component(n))));
        if (!acc.is_zero()) to_input_comps.emplace(n, std::move(acc));
    }
    ChainMap to_input = make_chain_map(u.total, x, std::move(to_input_comps));

    std::map<int, ModuleMap> to_v_comps;
    for (int n = x.min_degree; !x.is_zero() && n <= x.top_degree(); ++n) {
        if (x.coord_at(n).is_zero() || v.total.coord_at(n).is_zero()) continue;
        ModuleMap acc = ModuleMap::zero(x.coord_at(n), v.total.coord_at(n));
        for (std::size_t i = 0; i < v_parts.size(); ++i)
            acc = add(acc, compose(v.incls[i].component(n),
                                   compose(onto_v[i].component(n),
                                           gamma_split[i].component(n))));
        if (!acc.is_zero()) to_v_comps.emplace(n, std::move(acc));
    }
    ChainMap to_v = make_chain_map(x, v.total, std::move(to_v_comps));

    TruncationTriangle t{u.total, x, v.total, to_input, to_v, false, false, false};
    t.u_ok = in_aisle(u.total, f).ok;
    t.v_ok = in_coaisle_cech(v.total, f).ok && in_coaisle_hom(v.total, f).ok &&
             in_coaisle_reduced(v.total, f);

    ConeResult c = cone(to_input);
    std::map<int, ModuleMap> w_comps;
    for (int n = c.cone.min_degree; !c.cone.is_zero() && n <= c.cone.top_degree(); ++n) {
        FinModule cn = c.cone.coord_at(n);
        FinModule vn = v.total.coord_at(n);
        if (cn.is_zero() || vn.is_zero()) continue;
        std::size_t c1 = u.total.coord_at(n + 1).rank();
        std::size_t c2 = x.coord_at(n).rank();
        if (cn.rank() != c1 + c2) throw internal_error("cone coordinate shape mismatch");
        IntMat m(vn.rank(), c1 + c2);
        IntMat right = to_v.component(n).matrix;
        for (std::size_t r = 0; r < vn.rank(); ++r)
            for (std::size_t j = 0; j < c2; ++j) m.at(r, c1 + j) = right.at(r, j);
        w_comps.emplace(n, ModuleMap(cn, vn, std::move(m)));
    }
    t.triangle_ok = is_quasi_iso(make_chain_map(c.cone, v.total, std::move(w_comps)));

    if (!t.u_ok || !t.v_ok || !t.triangle_ok)
        throw internal_error("truncation verification failed");
    return t;
}

std::vector<Complex> generators_of(const ThomasonFiltration& f) {
    std::vector<Complex> gens;
    for (const auto& [p, c] : f.cutoffs) {
        if (c.kind == Cutoff::Kind::pos_inf)
            throw domain_error("+inf cutoff has no finite generator list");
        if (c.kind == Cutoff::Kind::neg_inf) continue;
        gens.push_back(shift(koszul(f.ring, {p}), -c.value));
    }
    return gens;
}

ThomasonFiltration filtration_of_generators(const CyclicRing& ring,
                                            const std::vector<Complex>& gens) {
    std::map<Int, Cutoff> cutoffs;
    for (const Complex& s : gens) {
        if (s.ring.modulus != ring.modulus) throw domain_error("ring mismatch");
        for (const auto& [i, h] : cohomology(s).parts)
            for (const Int& p : support(h).primes) {
                auto it = cutoffs.find(p);
                if (it == cutoffs.end() || !it->second.admits(i)) cutoffs[p] = Cutoff::at(i);
            }
    }
    return make_filtration(ring, cutoffs);
}

StalkHomResult stalk_hom_check(const Complex& x, const FinModule& e, int n) {
    if (e.ring.modulus != x.ring.modulus) throw domain_error("ring mismatch");
    if (!is_injective(e)) throw domain_error("stalk target must be injective");

    HomStructure hn = hom_module(x.coord_at(n), e);
    HomStructure habove = hom_module(x.coord_at(n + 1), e);
    HomStructure hbelow = hom_module(x.coord_at(n - 1), e);
    ModuleMap d_in = hom_pre(habove, hn, x.diff_at(n));
    ModuleMap d_out = hom_pre(hn, hbelow, x.diff_at(n - 1));
    SubquotientResult lsq = subquotient(d_in, d_out);

    SubquotientResult hsq = subquotient(x.diff_at(n - 1), x.diff_at(n));
    HomStructure rh = hom_module(hsq.module, e);

    IntMat m(rh.module.rank(), lsq.module.rank());
    for (std::size_t j = 0; j < lsq.module.rank(); ++j) {
        std::vector<Int> unit(lsq.module.rank(), 0);
        unit[j] = 1;
        auto z = preimage(lsq.proj, unit);
        if (!z) throw internal_error("cohomology class without representative");
        ModuleMap fj = hom_decode(hn, lsq.kernel_incl.apply(*z));
        ModuleMap hnf = descend_through_epi(hsq.proj, compose(fj, hsq.kernel_incl));
        std::vector<Int> col = hom_encode(rh, hnf);
        for (std::size_t i = 0; i < col.size(); ++i) m.at(i, j) = col[i];
    }
    ModuleMap iso(lsq.module, rh.module, std::move(m));
    bool confirmed =
        kernel(iso).module.is_zero() && lsq.module.order() == rh.module.order();
    return {lsq.module, rh.module, iso, confirmed};
}

std::vector<CoresolutionStep> coresolve_in_coaisle(const Complex& x,
                                                   const ThomasonFiltration& f, int depth) {
    check_ring(x, f);
    if (!in_coaisle_reduced(x, f)) throw domain_error("complex is not in the coaisle");
    {
        std::map<Int, bool> seen;
        for (const auto& [deg, h] : cohomology(x).parts) {
            (void)deg;
            for (const Int& p : support(h).primes) seen[p] = true;
        }
        for (const auto& [p, used] : seen)
            if (used && f.cutoffs.at(p).kind == Cutoff::Kind::neg_inf)
                throw domain_error("filtration unbounded below on the support");
    }

    std::vector<CoresolutionStep> steps;
    Complex cur = x;
    for (int i = 0; i < depth; ++i) {
        GradedModule h = cohomology(cur);
        if (h.is_zero()) break;
        int k = *h.lowest();
        SubquotientResult hsq = subquotient(cur.diff_at(k - 1), cur.diff_at(k));
        Envelope env = injective_envelope(hsq.module);
        ModuleMap sigma =
            extend_along_mono(hsq.kernel_incl, compose(env.embed, hsq.proj));
        Complex stalk = stalk_complex(f.ring, env.module, k);
        ChainMap iota = make_chain_map(cur, stalk, {{k, sigma}});

        bool ok = in_coaisle_cech(stalk, f).ok && in_coaisle_hom(stalk, f).ok &&
                  in_coaisle_reduced(stalk, f);
        steps.push_back({env.module, k, ok});

        cur = shift(cone(iota).cone, -1);
        GradedModule h2 = cohomology(cur);
        if (!h2.is_zero() && *h2.lowest() <= k)
            throw internal_error("coresolution did not advance");
    }
    return steps;
}

BoundednessReport classify_boundedness(const ThomasonFiltration& f) {
    bool below = true, above = true;
    for (const auto& [p, c] : f.cutoffs) {
        (void)p;
        if (c.kind == Cutoff::Kind::neg_inf) below = false;
        if (c.kind == Cutoff::Kind::pos_inf) above = false;
    }
    Boundedness kind = below && above   ? Boundedness::bounded
                       : below          ? Boundedness::bounded_below
                       : above          ? Boundedness::bounded_above
                                        : Boundedness::neither;
    return {kind, below && above};
}

MembershipProfile membership_profile(const Complex& x) {
    MembershipProfile p{x.ring, {}, {}, {}, {}};
    for (const Int& d : nonunit_divisors(x.ring)) {
        p.cech_inf[d] = cohomology(tensor_complexes(cech_tilde(x.ring, {d}), x)).lowest();
        p.koszul_sup[d] = cohomology(tensor_complexes(koszul(x.ring, {d}), x)).highest();
        p.hom_min[d] = cohomology(hom_complex(koszul(x.ring, {d}), x)).lowest();
    }
    for (const auto& [q, e] : x.ring.primes) {
        (void)e;
        p.gamma_inf[q] = cohomology(torsion_subcomplex(x, make_subset(x.ring, {q})).part).lowest();
    }
    return p;
}

bool profile_coaisle_cech(const MembershipProfile& p, const ThomasonFiltration& f) {
    for (const auto& [d, inf] : p.cech_inf)
        if (!satisfies_above(inf, f.divisor_cutoff(d))) return false;
    return true;
}

bool profile_coaisle_hom(const MembershipProfile& p, const ThomasonFiltration& f) {
    for (const auto& [d, mink] : p.hom_min)
        if (!satisfies_above(mink, f.divisor_cutoff(d))) return false;
    return true;
}

bool profile_coaisle_reduced(const MembershipProfile& p, const ThomasonFiltration& f) {
    for (const auto& [q, inf] : p.gamma_inf)
        if (!satisfies_above(inf, f.cutoffs.at(q))) return false;
    return true;
}

bool profile_co_t(const MembershipProfile& p, const ThomasonFiltration& f) {
    for (const auto& [d, sup] : p.koszul_sup)
        if (!satisfies_below(sup, f.divisor_cutoff(d))) return false;
    return true;
}

}  // namespace tslab
