#include "tslab/complex.hpp"

#include <algorithm>

namespace tslab {

namespace {

std::vector<Int> column_of(const IntMat& m, std::size_t j) {
    std::vector<Int> c(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) c[i] = m.at(i, j);
    return c;
}

}  // namespace

FinModule Complex::coord_at(int n) const {
    if (!in_range(n)) return zero_module(ring);
    return coords[static_cast<std::size_t>(n - min_degree)];
}

ModuleMap Complex::diff_at(int n) const {
    if (!is_zero() && n >= min_degree && n < top_degree())
        return diffs[static_cast<std::size_t>(n - min_degree)];
    return ModuleMap::zero(coord_at(n), coord_at(n + 1));
}

bool Complex::operator==(const Complex& o) const {
    if (ring.modulus != o.ring.modulus || min_degree != o.min_degree) return false;
    if (coords.size() != o.coords.size()) return false;
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (!(coords[i] == o.coords[i])) return false;
    for (std::size_t i = 0; i < diffs.size(); ++i)
        if (!(diffs[i] == o.diffs[i])) return false;
    return true;
}

Complex make_complex(const CyclicRing& ring, int min_degree, std::vector<FinModule> coords,
                     std::vector<ModuleMap> diffs) {
    if (coords.empty()) {
        if (!diffs.empty()) throw domain_error("complex: differentials without coordinates");
        return Complex{ring, 0, {}, {}};
    }
    if (diffs.size() + 1 != coords.size())
        throw domain_error("complex: differential count mismatch");
    for (const FinModule& m : coords)
        if (m.ring.modulus != ring.modulus) throw domain_error("complex: ring mismatch");
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        if (!(diffs[i].source == coords[i]) || !(diffs[i].target == coords[i + 1]))
            throw domain_error("complex: differential shape mismatch");
    }
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i)
        if (!compose(diffs[i + 1], diffs[i]).is_zero())
            throw domain_error("complex: d^2 != 0");

    std::size_t lo = 0, hi = coords.size();
    while (lo < hi && coords[lo].is_zero()) ++lo;
    while (hi > lo && coords[hi - 1].is_zero()) --hi;
    if (lo == hi) return Complex{ring, 0, {}, {}};
    std::vector<FinModule> c(coords.begin() + lo, coords.begin() + hi);
    std::vector<ModuleMap> d;
    for (std::size_t i = lo; i + 1 < hi; ++i) d.push_back(diffs[i]);
    return Complex{ring, min_degree + static_cast<int>(lo), std::move(c), std::move(d)};
}

Complex zero_complex(const CyclicRing& ring) { return Complex{ring, 0, {}, {}}; }

Complex stalk_complex(const CyclicRing& ring, const FinModule& m, int degree) {
    if (m.is_zero()) return zero_complex(ring);
    return make_complex(ring, degree, {m}, {});
}

bool all_free(const Complex& x) {
    for (const FinModule& m : x.coords)
        for (const Int& f : m.factors)
            if (f != x.ring.modulus) return false;
    return true;
}

ModuleMap ChainMap::component(int n) const {
    auto it = components.find(n);
    if (it != components.end()) return it->second;
    return ModuleMap::zero(source.coord_at(n), target.coord_at(n));
}

bool ChainMap::operator==(const ChainMap& o) const {
    if (!(source == o.source) || !(target == o.target)) return false;
    int lo = std::min(source.min_degree, target.min_degree);
    int hi = std::max(source.top_degree(), target.top_degree());
    for (int n = lo; n <= hi; ++n)
        if (!(component(n) == o.component(n))) return false;
    return true;
}

ChainMap make_chain_map(Complex source, Complex target, std::map<int, ModuleMap> components) {
    for (auto& [n, f] : components) {
        if (!(f.source == source.coord_at(n)) || !(f.target == target.coord_at(n)))
            throw domain_error("chain map: component shape mismatch");
    }
    ChainMap f{std::move(source), std::move(target), std::move(components)};
    int lo = std::min(f.source.min_degree, f.target.min_degree) - 1;
    int hi = std::max(f.source.top_degree(), f.target.top_degree());
    for (int n = lo; n <= hi; ++n) {
        if (!(compose(f.target.diff_at(n), f.component(n)) ==
              compose(f.component(n + 1), f.source.diff_at(n))))
            throw domain_error("chain map: does not commute with differentials");
    }
    return f;
}

ChainMap identity_chain_map(const Complex& x) {
    std::map<int, ModuleMap> comps;
    for (int n = x.min_degree; !x.is_zero() && n <= x.top_degree(); ++n)
        if (!x.coord_at(n).is_zero()) comps.emplace(n, ModuleMap::identity(x.coord_at(n)));
    return make_chain_map(x, x, std::move(comps));
}

ChainMap zero_chain_map(const Complex& x, const Complex& y) {
    return make_chain_map(x, y, {});
}

FinModule GradedModule::at(int n) const {
    auto it = parts.find(n);
    return it == parts.end() ? zero_module(ring) : it->second;
}

std::optional<int> GradedModule::lowest() const {
    if (parts.empty()) return std::nullopt;
    return parts.begin()->first;
}

std::optional<int> GradedModule::highest() const {
    if (parts.empty()) return std::nullopt;
    return parts.rbegin()->first;
}

Complex shift(const Complex& x, int k) {
    if (x.is_zero()) return x;
    std::vector<ModuleMap> d = x.diffs;
    if (k % 2 != 0)
        for (ModuleMap& f : d) f = negate(f);
    return make_complex(x.ring, x.min_degree - k, x.coords, std::move(d));
}

ConeResult cone(const ChainMap& f) {
    const Complex& x = f.source;
    const Complex& y = f.target;
    const CyclicRing& ring = x.ring;
    Complex sx = shift(x, 1);

    if (x.is_zero() && y.is_zero())
        return {zero_complex(ring), zero_chain_map(y, zero_complex(ring)),
                zero_chain_map(zero_complex(ring), sx)};

    int lo = std::min(sx.is_zero() ? y.min_degree : sx.min_degree,
                      y.is_zero() ? sx.min_degree : y.min_degree);
    int hi = std::max(sx.is_zero() ? y.top_degree() : sx.top_degree(),
                      y.is_zero() ? sx.top_degree() : y.top_degree());

    std::map<int, DirectSum> sums;
    for (int n = lo; n <= hi; ++n)
        sums.emplace(n, direct_sum(ring, {x.coord_at(n + 1), y.coord_at(n)}));

    std::vector<FinModule> coords;
    std::vector<ModuleMap> diffs;
    for (int n = lo; n <= hi; ++n) coords.push_back(sums.at(n).module);
    for (int n = lo; n < hi; ++n) {
        ModuleMap b00 = negate(x.diff_at(n + 1));
        ModuleMap b10 = f.component(n + 1);
        ModuleMap b11 = y.diff_at(n);
        diffs.push_back(assemble_blocks(
            sums.at(n + 1), sums.at(n),
            [&](std::size_t ti, std::size_t si) -> const ModuleMap* {
                if (ti == 0 && si == 0) return &b00;
                if (ti == 1 && si == 0) return &b10;
                if (ti == 1 && si == 1) return &b11;
                return nullptr;
            }));
    }
    Complex c = make_complex(ring, lo, std::move(coords), std::move(diffs));

    std::map<int, ModuleMap> incl, proj;
    for (int n = lo; n <= hi; ++n) {
        if (!y.coord_at(n).is_zero()) incl.emplace(n, summand_inclusion(sums.at(n), 1));
        if (!x.coord_at(n + 1).is_zero()) proj.emplace(n, summand_projection(sums.at(n), 0));
    }
    return {c, make_chain_map(y, c, std::move(incl)), make_chain_map(c, sx, std::move(proj))};
}

TruncationResult soft_truncate(const Complex& x, int n, TruncSide side) {
    if (side == TruncSide::le) {
        if (x.is_zero() || n >= x.top_degree()) return {x, identity_chain_map(x)};
        if (n < x.min_degree) return {zero_complex(x.ring), zero_chain_map(zero_complex(x.ring), x)};
        KernelResult k = kernel(x.diff_at(n));
        std::vector<FinModule> coords;
        std::vector<ModuleMap> diffs;
        for (int m = x.min_degree; m < n; ++m) coords.push_back(x.coord_at(m));
        coords.push_back(k.module);
        for (int m = x.min_degree; m + 1 < n; ++m) diffs.push_back(x.diff_at(m));
        if (n > x.min_degree) diffs.push_back(factor_through_mono(k.incl, x.diff_at(n - 1)));
        Complex part = make_complex(x.ring, x.min_degree, std::move(coords), std::move(diffs));
        std::map<int, ModuleMap> comps;
        for (int m = part.min_degree; !part.is_zero() && m <= part.top_degree(); ++m) {
            if (part.coord_at(m).is_zero()) continue;
            comps.emplace(m, m == n ? k.incl : ModuleMap::identity(x.coord_at(m)));
        }
        return {part, make_chain_map(part, x, std::move(comps))};
    }
    if (x.is_zero() || n < x.min_degree) return {x, identity_chain_map(x)};
    if (n >= x.top_degree()) return {zero_complex(x.ring), zero_chain_map(x, zero_complex(x.ring))};
    KernelResult k = kernel(x.diff_at(n));
    CokernelResult q = cokernel(k.incl);
    ModuleMap dbar = descend_through_epi(q.proj, x.diff_at(n));
    std::vector<FinModule> coords{q.module};
    std::vector<ModuleMap> diffs{dbar};
    for (int m = n + 1; m <= x.top_degree(); ++m) coords.push_back(x.coord_at(m));
    for (int m = n + 1; m < x.top_degree(); ++m) diffs.push_back(x.diff_at(m));
    Complex part = make_complex(x.ring, n, std::move(coords), std::move(diffs));
    std::map<int, ModuleMap> comps;
    for (int m = part.min_degree; !part.is_zero() && m <= part.top_degree(); ++m) {
        if (part.coord_at(m).is_zero() || x.coord_at(m).is_zero()) continue;
        comps.emplace(m, m == n ? q.proj : ModuleMap::identity(x.coord_at(m)));
    }
    return {part, make_chain_map(x, part, std::move(comps))};
}

Complex brutal_truncate(const Complex& x, int n, TruncSide side) {
    if (x.is_zero()) return x;
    int lo = x.min_degree, hi = x.top_degree();
    if (side == TruncSide::le)
        hi = std::min(hi, n);
    else
        lo = std::max(lo, n + 1);
    if (lo > hi) return zero_complex(x.ring);
    std::vector<FinModule> coords;
    std::vector<ModuleMap> diffs;
    for (int m = lo; m <= hi; ++m) coords.push_back(x.coord_at(m));
    for (int m = lo; m < hi; ++m) diffs.push_back(x.diff_at(m));
    return make_complex(x.ring, lo, std::move(coords), std::move(diffs));
}

namespace {

struct TensorLevels {
    int lo = 0, hi = -1;
    // per total degree: (degree over x, structure of X^i ⊗ Y^{n−i})
    std::map<int, std::vector<std::pair<int, TensorStructure>>> level;
    std::map<int, DirectSum> sums;
};

TensorLevels tensor_levels(const Complex& x, const Complex& y) {
    TensorLevels t;
    t.lo = x.min_degree + y.min_degree;
    t.hi = x.top_degree() + y.top_degree();
    for (int n = t.lo; n <= t.hi; ++n) {
        std::vector<FinModule> mods;
        for (int i = std::max(x.min_degree, n - y.top_degree());
             i <= std::min(x.top_degree(), n - y.min_degree); ++i) {
            TensorStructure ts = tensor_modules(x.coord_at(i), y.coord_at(n - i));
            mods.push_back(ts.module);
            t.level[n].emplace_back(i, std::move(ts));
        }
        t.sums.emplace(n, direct_sum(x.ring, mods));
    }
    return t;
}

Complex tensor_from_levels(const Complex& x, const Complex& y, const TensorLevels& t) {
    std::vector<FinModule> coords;
    std::vector<ModuleMap> diffs;
    for (int n = t.lo; n <= t.hi; ++n) coords.push_back(t.sums.at(n).module);
    for (int n = t.lo; n < t.hi; ++n) {
        const auto& src = t.level.at(n);
        const auto& dst = t.level.at(n + 1);
        std::map<std::pair<std::size_t, std::size_t>, ModuleMap> blocks;
        for (std::size_t a = 0; a < src.size(); ++a)
            for (std::size_t b = 0; b < dst.size(); ++b) {
                int i = src[a].first;
                if (dst[b].first == i + 1) {
                    blocks.emplace(std::make_pair(b, a),
                                   tensor_map(src[a].second, dst[b].second, x.diff_at(i),
                                              ModuleMap::identity(y.coord_at(n - i))));
                } else if (dst[b].first == i) {
                    ModuleMap m = tensor_map(src[a].second, dst[b].second,
                                             ModuleMap::identity(x.coord_at(i)), y.diff_at(n - i));
                    if (i % 2 != 0) m = negate(m);
                    blocks.emplace(std::make_pair(b, a), std::move(m));
                }
            }
        diffs.push_back(assemble_blocks(t.sums.at(n + 1), t.sums.at(n),
                                        [&](std::size_t ti, std::size_t si) -> const ModuleMap* {
                                            auto it = blocks.find({ti, si});
                                            return it == blocks.end() ? nullptr : &it->second;
                                        }));
    }
    return make_complex(x.ring, t.lo, std::move(coords), std::move(diffs));
}

}  // namespace

Complex tensor_complexes(const Complex& x, const Complex& y) {
    if (x.ring.modulus != y.ring.modulus) throw domain_error("tensor: ring mismatch");
    if (x.is_zero() || y.is_zero()) return zero_complex(x.ring);
    return tensor_from_levels(x, y, tensor_levels(x, y));
}

ChainMap tensor_chain_map(const ChainMap& f, const Complex& y) {
    Complex src = tensor_complexes(f.source, y);
    Complex dst = tensor_complexes(f.target, y);
    if (src.is_zero() || dst.is_zero()) return zero_chain_map(src, dst);
    TensorLevels ts = tensor_levels(f.source, y);
    TensorLevels td = tensor_levels(f.target, y);
    std::map<int, ModuleMap> comps;
    for (int n = std::max(ts.lo, td.lo); n <= std::min(ts.hi, td.hi); ++n) {
        const auto& sl = ts.level.at(n);
        const auto& dl = td.level.at(n);
        std::map<std::pair<std::size_t, std::size_t>, ModuleMap> blocks;
        for (std::size_t a = 0; a < sl.size(); ++a)
            for (std::size_t b = 0; b < dl.size(); ++b)
                if (dl[b].first == sl[a].first) {
                    int i = sl[a].first;
                    blocks.emplace(std::make_pair(b, a),
                                   tensor_map(sl[a].second, dl[b].second, f.component(i),
                                              ModuleMap::identity(y.coord_at(n - i))));
                }
        ModuleMap c = assemble_blocks(td.sums.at(n), ts.sums.at(n),
                                      [&](std::size_t ti, std::size_t si) -> const ModuleMap* {
                                          auto it = blocks.find({ti, si});
                                          return it == blocks.end() ? nullptr : &it->second;
                                      });
        if (!c.source.is_zero() && !c.target.is_zero()) comps.emplace(n, std::move(c));
    }
    return make_chain_map(src, dst, std::move(comps));
}

Complex hom_complex(const Complex& x, const Complex& y) {
    if (x.ring.modulus != y.ring.modulus) throw domain_error("hom: ring mismatch");
    const CyclicRing& ring = x.ring;
    if (x.is_zero() || y.is_zero()) return zero_complex(ring);

    int lo = y.min_degree - x.top_degree();
    int hi = y.top_degree() - x.min_degree;
    struct Summand {
        int i;
        HomStructure hs;
    };
    std::map<int, std::vector<Summand>> level;
    std::map<int, DirectSum> sums;
    for (int n = lo; n <= hi; ++n) {
        std::vector<FinModule> mods;
        for (int i = std::max(x.min_degree, y.min_degree - n);
             i <= std::min(x.top_degree(), y.top_degree() - n); ++i) {
            HomStructure hs = hom_module(x.coord_at(i), y.coord_at(i + n));
            mods.push_back(hs.module);
            level[n].push_back({i, std::move(hs)});
        }
        sums.emplace(n, direct_sum(ring, mods));
    }

    std::vector<FinModule> coords;
    std::vector<ModuleMap> diffs;
    for (int n = lo; n <= hi; ++n) coords.push_back(sums.at(n).module);
    for (int n = lo; n < hi; ++n) {
        const auto& src = level[n];
        const auto& dst = level[n + 1];
        std::map<std::pair<std::size_t, std::size_t>, ModuleMap> blocks;
        for (std::size_t a = 0; a < src.size(); ++a)
            for (std::size_t b = 0; b < dst.size(); ++b) {
                if (dst[b].i == src[a].i) {
                    blocks.emplace(std::make_pair(b, a),
                                   hom_post(src[a].hs, dst[b].hs, y.diff_at(src[a].i + n)));
                } else if (dst[b].i == src[a].i - 1) {
                    ModuleMap m = hom_pre(src[a].hs, dst[b].hs, x.diff_at(src[a].i - 1));
                    if (n % 2 == 0) m = negate(m);
                    blocks.emplace(std::make_pair(b, a), std::move(m));
                }
            }
        diffs.push_back(assemble_blocks(sums.at(n + 1), sums.at(n),
                                        [&](std::size_t ti, std::size_t si) -> const ModuleMap* {
                                            auto it = blocks.find({ti, si});
                                            return it == blocks.end() ? nullptr : &it->second;
                                        }));
    }
    return make_complex(ring, lo, std::move(coords), std::move(diffs));
}

GradedModule cohomology(const Complex& x) {
    GradedModule g{x.ring, {}};
    if (x.is_zero()) return g;
    for (int n = x.min_degree; n <= x.top_degree(); ++n) {
        FinModule h = subquotient(x.diff_at(n - 1), x.diff_at(n)).module.canonical();
        if (!h.is_zero()) g.parts.emplace(n, std::move(h));
    }
    return g;
}

FinModule cohomology_at(const Complex& x, int n) {
    if (!x.in_range(n)) return zero_module(x.ring);
    return subquotient(x.diff_at(n - 1), x.diff_at(n)).module.canonical();
}

ModuleMap cohomology_map(const ChainMap& f, int n) {
    SubquotientResult sx = subquotient(f.source.diff_at(n - 1), f.source.diff_at(n));
    SubquotientResult sy = subquotient(f.target.diff_at(n - 1), f.target.diff_at(n));
    ModuleMap onker = factor_through_mono(sy.kernel_incl, compose(f.component(n), sx.kernel_incl));
    return descend_through_epi(sx.proj, compose(sy.proj, onker));
}

bool is_acyclic(const Complex& x) { return cohomology(x).is_zero(); }

bool is_quasi_iso(const ChainMap& f) { return is_acyclic(cone(f).cone); }

bool same_cohomology(const Complex& x, const Complex& y) {
    GradedModule gx = cohomology(x), gy = cohomology(y);
    if (gx.parts.size() != gy.parts.size()) return false;
    for (const auto& [n, m] : gx.parts)
        if (!isomorphic(m, gy.at(n))) return false;
    return true;
}

Complex koszul(const CyclicRing& ring, const std::vector<Int>& xs) {
    Complex acc = stalk_complex(ring, free_module(ring, 1), 0);
    for (const Int& x : xs) {
        FinModule r = free_module(ring, 1);
        Complex kx = make_complex(ring, -1, {r, r}, {ModuleMap::scalar(r, x)});
        acc = tensor_complexes(acc, kx);
    }
    return acc;
}

Complex cech_tilde(const CyclicRing& ring, const std::vector<Int>& xs) {
    Complex acc = stalk_complex(ring, free_module(ring, 1), 0);
    for (const Int& x : xs) {
        FinModule r = free_module(ring, 1);
        LocalizedRing loc = localize_away(ring, x);
        Complex cx;
        if (loc.is_zero_ring()) {
            cx = stalk_complex(ring, r, 0);
        } else {
            FinModule rl = make_module(ring, {loc.new_modulus});
            cx = make_complex(ring, 0, {r, rl}, {ModuleMap(r, rl, IntMat(1, 1, {Int(1)}))});
        }
        acc = tensor_complexes(acc, cx);
    }
    return acc;
}

CechTriangle cech_triangle(const CyclicRing& ring, const Ideal& ideal) {
    Complex tilde = cech_tilde(ring, {ideal.gen});
    Complex unit = stalk_complex(ring, free_module(ring, 1), 0);
    std::map<int, ModuleMap> comps;
    comps.emplace(0, ModuleMap::identity(free_module(ring, 1)));
    ChainMap to_unit = make_chain_map(tilde, unit, std::move(comps));
    ConeResult c = cone(to_unit);
    return {tilde, unit, c.cone, to_unit, c.from_target, c.to_shifted_source};
}

ReplacementResult projective_replacement(const Complex& x, int floor) {
    const CyclicRing& ring = x.ring;
    if (x.is_zero()) {
        Complex z = zero_complex(ring);
        return {z, zero_chain_map(z, x)};
    }
    if (floor > x.min_degree) throw domain_error("replacement floor above the needed window");

    int top = x.top_degree();
    std::map<int, FinModule> p;
    std::map<int, ModuleMap> dp;  // dp[i] : P^i → P^{i+1}
    std::map<int, ModuleMap> pi;  // pi[i] : P^i → X^i

    for (int i = top; i >= floor; --i) {
        FinModule xi = x.coord_at(i);
        ModuleMap dx = x.diff_at(i);

        KernelResult kx = kernel(dx);
        std::size_t r2 = kx.module.rank();

        std::vector<std::vector<Int>> gen_cols, w_cols;
        FinModule pnext = (i == top) ? zero_module(ring) : p.at(i + 1);
        if (!pnext.is_zero()) {
            CokernelResult cok = cokernel(dx);
            ModuleMap dnext = (i + 1 == top) ? ModuleMap::zero(pnext, zero_module(ring))
                                             : dp.at(i + 1);
            ModuleMap qpi = compose(cok.proj, pi.at(i + 1));
            DirectSum tgt = direct_sum(ring, {dnext.target, cok.module});
            ModuleMap stacked = assemble_blocks(
                tgt, direct_sum(ring, {pnext}),
                [&](std::size_t ti, std::size_t) -> const ModuleMap* {
                    return ti == 0 ? &dnext : &qpi;
                });
            KernelResult kz = kernel(stacked);
            for (std::size_t j = 0; j < kz.module.rank(); ++j) {
                std::vector<Int> g = column_of(kz.incl.matrix, j);
                gen_cols.push_back(g);
                auto w = preimage(dx, pi.at(i + 1).apply(g));
                if (!w) throw internal_error("replacement: generator not liftable");
                w_cols.push_back(*w);
            }
        }
        std::size_t r1 = gen_cols.size();

        FinModule pi_mod = free_module(ring, r1 + r2);
        IntMat dmat(pnext.rank(), r1 + r2);
        IntMat pmat(xi.rank(), r1 + r2);
        for (std::size_t j = 0; j < r1; ++j) {
            for (std::size_t r = 0; r < pnext.rank(); ++r) dmat.at(r, j) = gen_cols[j][r];
            for (std::size_t r = 0; r < xi.rank(); ++r) pmat.at(r, j) = w_cols[j][r];
        }
        for (std::size_t j = 0; j < r2; ++j)
            for (std::size_t r = 0; r < xi.rank(); ++r)
                pmat.at(r, r1 + j) = kx.incl.matrix.at(r, j);

        p.emplace(i, pi_mod);
        if (i < top) dp.emplace(i, ModuleMap(pi_mod, pnext, std::move(dmat)));
        pi.emplace(i, ModuleMap(pi_mod, xi, std::move(pmat)));
    }

    std::vector<FinModule> coords;
    std::vector<ModuleMap> diffs;
    for (int i = floor; i <= top; ++i) coords.push_back(p.at(i));
    for (int i = floor; i < top; ++i) diffs.push_back(dp.at(i));
    Complex pc = make_complex(ring, floor, std::move(coords), std::move(diffs));

    std::map<int, ModuleMap> comps;
    for (int i = floor; i <= top; ++i)
        if (!p.at(i).is_zero() && !x.coord_at(i).is_zero()) comps.emplace(i, pi.at(i));
    return {pc, make_chain_map(pc, x, std::move(comps))};
}

FinModule hom_derived(const Complex& x, const Complex& y, int k) {
    if (x.ring.modulus != y.ring.modulus) throw domain_error("hom: ring mismatch");
    if (x.is_zero() || y.is_zero()) return zero_module(x.ring);
    Complex p = x;
    if (!all_free(x)) {
        int floor = std::min(x.min_degree, y.min_degree - k - 2);
        p = projective_replacement(x, floor).p;
    }
    return cohomology_at(hom_complex(p, y), k);
}

Complex compact_dual(const Complex& s) {
    if (!all_free(s)) throw domain_error("compact dual requires free coordinates");
    return hom_complex(s, stalk_complex(s.ring, free_module(s.ring, 1), 0));
}

FinModule tower_colimit(const std::vector<FinModule>& ms, const std::vector<ModuleMap>& fs) {
    if (ms.empty()) throw domain_error("tower is empty");
    if (fs.size() + 1 != ms.size()) throw domain_error("tower: map count mismatch");
    for (std::size_t i = 0; i < fs.size(); ++i)
        if (!(fs[i].source == ms[i]) || !(fs[i].target == ms[i + 1]))
            throw domain_error("tower: map shape mismatch");

    std::size_t last = ms.size() - 1;
    if (last == 0) return ms[0].canonical();

    // to_last[i] = composite M_i → M_last; to_prev[i] = composite M_i → M_{last−1}
    std::vector<ModuleMap> to_last(ms.size());
    to_last[last] = ModuleMap::identity(ms[last]);
    for (std::size_t i = last; i-- > 0;) to_last[i] = compose(to_last[i + 1], fs[i]);
    std::vector<ModuleMap> to_prev(last);
    to_prev[last - 1] = ModuleMap::identity(ms[last - 1]);
    for (std::size_t i = last - 1; i-- > 0;) to_prev[i] = compose(to_prev[i + 1], fs[i]);

    std::vector<Int> ker_last(ms.size()), q_order(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i) {
        ker_last[i] = kernel(to_last[i]).module.order();
        q_order[i] = ms[i].order() / ker_last[i];
    }

    std::optional<std::size_t> trusted;
    for (std::size_t i = 0; i < last; ++i) {
        if (kernel(to_prev[i]).module.order() != ker_last[i]) continue;
        if (q_order[i] != q_order[i + 1]) continue;
        trusted = i;
    }
    if (!trusted) throw domain_error("tower did not stabilize");
    std::size_t n = *trusted + 1;
    return cokernel(kernel(to_last[n]).incl).module.canonical();
}

DirectSumComplex direct_sum_complexes(const CyclicRing& ring, const std::vector<Complex>& parts) {
    bool any = false;
    int lo = 0, hi = 0;
    for (const Complex& c : parts) {
        if (c.ring.modulus != ring.modulus) throw domain_error("direct sum: ring mismatch");
        if (c.is_zero()) continue;
        if (!any) {
            lo = c.min_degree;
            hi = c.top_degree();
            any = true;
        } else {
            lo = std::min(lo, c.min_degree);
            hi = std::max(hi, c.top_degree());
        }
    }
    if (!any) {
        Complex z = zero_complex(ring);
        DirectSumComplex out{z, {}, {}};
        for (const Complex& c : parts) {
            out.incls.push_back(zero_chain_map(c, z));
            out.projs.push_back(zero_chain_map(z, c));
        }
        return out;
    }

    std::map<int, DirectSum> sums;
    for (int n = lo; n <= hi; ++n) {
        std::vector<FinModule> mods;
        for (const Complex& c : parts) mods.push_back(c.coord_at(n));
        sums.emplace(n, direct_sum(ring, mods));
    }
    std::vector<FinModule> coords;
    std::vector<ModuleMap> diffs;
    for (int n = lo; n <= hi; ++n) coords.push_back(sums.at(n).module);
    for (int n = lo; n < hi; ++n) {
        std::vector<ModuleMap> blocks;
        for (const Complex& c : parts) blocks.push_back(c.diff_at(n));
        diffs.push_back(assemble_blocks(sums.at(n + 1), sums.at(n),
                                        [&](std::size_t ti, std::size_t si) -> const ModuleMap* {
                                            return ti == si ? &blocks[ti] : nullptr;
                                        }));
    }
    Complex total = make_complex(ring, lo, std::move(coords), std::move(diffs));

    DirectSumComplex out{total, {}, {}};
    for (std::size_t k = 0; k < parts.size(); ++k) {
        std::map<int, ModuleMap> incl, proj;
        for (int n = lo; n <= hi; ++n) {
            if (parts[k].coord_at(n).is_zero()) continue;
            incl.emplace(n, summand_inclusion(sums.at(n), k));
            proj.emplace(n, summand_projection(sums.at(n), k));
        }
        out.incls.push_back(make_chain_map(parts[k], total, std::move(incl)));
        out.projs.push_back(make_chain_map(total, parts[k], std::move(proj)));
    }
    return out;
}

}  // namespace tslab
