#include "tslab/module.hpp"

#include <algorithm>
#include <numeric>

namespace tslab {

namespace {

int valuation(Int x, const Int& p) {
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

Int int_pow(const Int& p, int e) {
    Int r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

IntMat inverse_unimodular(const IntMat& u) {
    // s.u * u * s.v = I for a unimodular input, so u⁻¹ = s.v * s.u.
    SmithResult s = smith_normal_form(u);
    for (std::size_t i = 0; i < u.rows(); ++i)
        if (i >= u.cols() || s.d.at(i, i) != 1)
            throw internal_error("inverse_unimodular: matrix not invertible");
    return s.v * s.u;
}

}  // namespace

Int FinModule::order() const {
    Int o = 1;
    for (const Int& d : factors) o *= d;
    return o;
}

FinModule FinModule::canonical() const {
    // Regroup prime powers into an invariant-factor chain d_1 | d_2 | ...
    std::map<Int, std::vector<int>> exps;  // prime → exponents, descending
    for (const Int& d : factors)
        for (const auto& [p, e] : ring.primes) {
            int v = valuation(d, p);
            if (v > 0) exps[p].push_back(v);
        }
    std::size_t layers = 0;
    for (auto& [p, vs] : exps) {
        std::sort(vs.rbegin(), vs.rend());
        layers = std::max(layers, vs.size());
    }
    std::vector<Int> inv(layers, Int(1));
    for (const auto& [p, vs] : exps)
        for (std::size_t i = 0; i < vs.size(); ++i) inv[i] *= int_pow(p, vs[i]);
    std::reverse(inv.begin(), inv.end());
    return FinModule{ring, std::move(inv)};
}

FinModule make_module(const CyclicRing& ring, std::vector<Int> factors) {
    for (const Int& d : factors) {
        if (d < 2) throw domain_error("module factor must exceed 1");
        if (ring.modulus % d != 0) throw domain_error("module factor must divide the modulus");
    }
    return FinModule{ring, std::move(factors)};
}

FinModule zero_module(const CyclicRing& ring) { return FinModule{ring, {}}; }

FinModule cyclic_module(const CyclicRing& ring, const Int& d) {
    Int g = gcd(mod_norm(d, ring.modulus), ring.modulus);
    if (g == 0) g = ring.modulus;
    if (g == 1) return zero_module(ring);
    return FinModule{ring, {g}};
}

FinModule free_module(const CyclicRing& ring, std::size_t rank) {
    return FinModule{ring, std::vector<Int>(rank, ring.modulus)};
}

bool isomorphic(const FinModule& a, const FinModule& b) {
    return a.ring == b.ring && a.canonical().factors == b.canonical().factors;
}

ModuleMap::ModuleMap(FinModule src, FinModule tgt, IntMat m)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
    if (source.ring.modulus != target.ring.modulus)
        throw domain_error("module map: ring mismatch");
    if (matrix.rows() != target.rank() || matrix.cols() != source.rank())
        throw domain_error("module map: matrix shape mismatch");
    for (std::size_t i = 0; i < matrix.rows(); ++i)
        for (std::size_t j = 0; j < matrix.cols(); ++j) {
            Int& a = matrix.at(i, j);
            a = mod_norm(a, target.factors[i]);
            Int need = target.factors[i] / gcd(target.factors[i], source.factors[j]);
            if (a % need != 0) throw domain_error("module map: entry not well-defined");
        }
}

ModuleMap ModuleMap::identity(const FinModule& m) {
    return ModuleMap(m, m, IntMat::identity(m.rank()));
}

ModuleMap ModuleMap::zero(const FinModule& src, const FinModule& tgt) {
    return ModuleMap(src, tgt, IntMat(tgt.rank(), src.rank()));
}

ModuleMap ModuleMap::scalar(const FinModule& m, const Int& c) {
    IntMat a(m.rank(), m.rank());
    for (std::size_t i = 0; i < m.rank(); ++i) a.at(i, i) = mod_norm(c, m.factors[i]);
    return ModuleMap(m, m, std::move(a));
}

std::vector<Int> ModuleMap::apply(const std::vector<Int>& x) const {
    std::vector<Int> y = matrix * x;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = mod_norm(y[i], target.factors[i]);
    return y;
}

bool ModuleMap::operator==(const ModuleMap& o) const {
    return source.factors == o.source.factors && target.factors == o.target.factors &&
           matrix == o.matrix;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
    if (f.target.factors != g.source.factors)
        throw domain_error("compose: middle modules disagree");
    return ModuleMap(f.source, g.target, g.matrix * f.matrix);
}

ModuleMap add(const ModuleMap& f, const ModuleMap& g) {
    if (f.source.factors != g.source.factors || f.target.factors != g.target.factors)
        throw domain_error("add: shape mismatch");
    IntMat m = f.matrix;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) += g.matrix.at(i, j);
    return ModuleMap(f.source, f.target, std::move(m));
}

ModuleMap negate(const ModuleMap& f) { return scale(-1, f); }

ModuleMap scale(const Int& c, const ModuleMap& f) {
    IntMat m = f.matrix;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) *= c;
    return ModuleMap(f.source, f.target, std::move(m));
}

KernelResult kernel(const ModuleMap& f) {
    const std::size_t m = f.source.rank(), t = f.target.rank();
    // Solutions of F x ≡ 0 (mod target factors), lifted to an exact system.
    IntMat aug(t, m + t);
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < m; ++j) aug.at(i, j) = f.matrix.at(i, j);
        aug.at(i, m + i) = f.target.factors[i];
    }
    auto basis = kernel_lattice(aug);
    // Generators of the solution lattice L ⊆ ℤ^m, always containing diag(d).
    // Each d_j e_j ∈ L (well-definedness), so entries reduce mod d_j in place.
    IntMat gens(m, basis.size() + m);
    for (std::size_t b = 0; b < basis.size(); ++b)
        for (std::size_t i = 0; i < m; ++i)
            gens.at(i, b) = mod_norm(basis[b][i], f.source.factors[i]);
    for (std::size_t i = 0; i < m; ++i) gens.at(i, basis.size() + i) = f.source.factors[i];

    SmithResult sg = smith_normal_form(gens);
    if (sg.rank != m) throw internal_error("kernel: solution lattice lost full rank");
    IntMat ug_inv = inverse_unimodular(sg.u);
    // Basis of L is ug_inv * diag(δ); express diag(d_src) in that basis.
    IntMat c(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Int num = sg.u.at(i, j) * f.source.factors[j];
            if (num % sg.d.at(i, i) != 0) throw internal_error("kernel: non-integral change of basis");
            c.at(i, j) = num / sg.d.at(i, i);
        }
    SmithResult sc = smith_normal_form(c);
    IntMat uc_inv = inverse_unimodular(sc.u);
    IntMat new_basis(m, m);  // columns = generators of L adapted to the quotient
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Int acc = 0;
            for (std::size_t k = 0; k < m; ++k) acc += ug_inv.at(i, k) * sg.d.at(k, k) * uc_inv.at(k, j);
            new_basis.at(i, j) = acc;
        }
    std::vector<Int> ks;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < m; ++i) {
        Int ci = sc.d.at(i, i);
        if (ci > 1) {
            ks.push_back(ci);
            keep.push_back(i);
        }
    }
    FinModule k{f.source.ring, ks};
    IntMat incl(m, keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j)
        for (std::size_t i = 0; i < m; ++i)
            incl.at(i, j) = mod_norm(new_basis.at(i, keep[j]), f.source.factors[i]);
    return KernelResult{k, ModuleMap(k, f.source, std::move(incl))};
}

CokernelResult cokernel(const ModuleMap& f) {
    const std::size_t m = f.source.rank(), t = f.target.rank();
    IntMat aug(t, m + t);
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < m; ++j) aug.at(i, j) = f.matrix.at(i, j);
        aug.at(i, m + i) = f.target.factors[i];
    }
    SmithResult s = smith_normal_form(aug);
    std::vector<Int> cs;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < t; ++i) {
        Int di = s.d.at(i, i);
        if (di == 0) throw internal_error("cokernel: presentation lost full rank");
        if (di > 1) {
            cs.push_back(di);
            keep.push_back(i);
        }
    }
    FinModule c{f.source.ring, cs};
    IntMat proj(keep.size(), t);
    for (std::size_t r = 0; r < keep.size(); ++r)
        for (std::size_t j = 0; j < t; ++j)
            proj.at(r, j) = mod_norm(s.u.at(keep[r], j), cs[r]);
    return CokernelResult{c, ModuleMap(f.target, c, std::move(proj))};
}

FinModule image_of(const ModuleMap& f) {
    return cokernel(kernel(f).incl).module;  // M / ker(f)
}

SubquotientResult subquotient(const ModuleMap& f_in, const ModuleMap& f_out) {
    if (!compose(f_out, f_in).is_zero()) throw domain_error("not a complex at this degree");
    KernelResult z = kernel(f_out);
    ModuleMap into_kernel = factor_through_mono(z.incl, f_in);
    CokernelResult h = cokernel(into_kernel);
    return SubquotientResult{h.module, z.module, z.incl, h.proj};
}

ModuleMap factor_through_mono(const ModuleMap& incl, const ModuleMap& f) {
    if (incl.target.factors != f.target.factors)
        throw domain_error("factor_through_mono: targets disagree");
    IntMat g(incl.source.rank(), f.source.rank());
    for (std::size_t j = 0; j < f.source.rank(); ++j) {
        std::vector<Int> b(f.target.rank());
        for (std::size_t i = 0; i < f.target.rank(); ++i) b[i] = f.matrix.at(i, j);
        auto x = solve_mod(incl.matrix, b, incl.target.factors);
        if (!x) throw internal_error("factor_through_mono: image not contained in the submodule");
        for (std::size_t i = 0; i < incl.source.rank(); ++i)
            g.at(i, j) = mod_norm((*x)[i], incl.source.factors[i]);
    }
    return ModuleMap(f.source, incl.source, std::move(g));
}

ModuleMap descend_through_epi(const ModuleMap& epi, const ModuleMap& f) {
    if (epi.source.factors != f.source.factors)
        throw domain_error("descend_through_epi: sources disagree");
    IntMat g(f.target.rank(), epi.target.rank());
    for (std::size_t j = 0; j < epi.target.rank(); ++j) {
        std::vector<Int> e(epi.target.rank());
        e[j] = 1;
        auto y = solve_mod(epi.matrix, e, epi.target.factors);
        if (!y) throw internal_error("descend_through_epi: map is not surjective");
        std::vector<Int> img = f.apply([&] {
            std::vector<Int> v = *y;
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod_norm(v[i], f.source.factors[i]);
            return v;
        }());
        for (std::size_t i = 0; i < f.target.rank(); ++i) g.at(i, j) = img[i];
    }
    return ModuleMap(epi.target, f.target, std::move(g));
}

ModuleMap extend_along_mono(const ModuleMap& mono, const ModuleMap& f) {
    if (mono.source.factors != f.source.factors)
        throw domain_error("extend_along_mono: sources disagree");
    const FinModule& a = mono.source;   // small module
    const FinModule& m = mono.target;   // ambient
    const FinModule& e = f.target;      // injective target
    // Unknown φ: M → E written as φ[r][j] = (e_r/gcd(e_r,d_j))·ψ[r][j] so any
    // integer ψ yields a well-defined map; solve φ ∘ mono = f for ψ.
    const std::size_t vars = e.rank() * m.rank();
    IntMat sys(e.rank() * a.rank(), vars);
    std::vector<Int> rhs(e.rank() * a.rank()), mods(e.rank() * a.rank());
    for (std::size_t r = 0; r < e.rank(); ++r)
        for (std::size_t c = 0; c < a.rank(); ++c) {
            std::size_t row = r * a.rank() + c;
            rhs[row] = f.matrix.at(r, c);
            mods[row] = e.factors[r];
            for (std::size_t j = 0; j < m.rank(); ++j) {
                Int unit = e.factors[r] / gcd(e.factors[r], m.factors[j]);
                sys.at(row, r * m.rank() + j) = unit * mono.matrix.at(j, c);
            }
        }
    auto psi = solve_mod(sys, rhs, mods);
    if (!psi) throw internal_error("extend_along_mono: no extension (target not injective?)");
    IntMat phi(e.rank(), m.rank());
    for (std::size_t r = 0; r < e.rank(); ++r)
        for (std::size_t j = 0; j < m.rank(); ++j) {
            Int unit = e.factors[r] / gcd(e.factors[r], m.factors[j]);
            phi.at(r, j) = mod_norm(unit * (*psi)[r * m.rank() + j], e.factors[r]);
        }
    return ModuleMap(m, e, std::move(phi));
}

std::optional<std::vector<Int>> preimage(const ModuleMap& f, const std::vector<Int>& y) {
    auto x = solve_mod(f.matrix, y, f.target.factors);
    if (!x) return std::nullopt;
    for (std::size_t i = 0; i < x->size(); ++i) (*x)[i] = mod_norm((*x)[i], f.source.factors[i]);
    return x;
}

TensorStructure tensor_modules(const FinModule& m, const FinModule& n) {
    if (m.ring.modulus != n.ring.modulus) throw domain_error("tensor: ring mismatch");
    TensorStructure t;
    std::vector<Int> fs;
    for (std::size_t j = 0; j < m.rank(); ++j)
        for (std::size_t k = 0; k < n.rank(); ++k) {
            Int g = gcd(m.factors[j], n.factors[k]);
            if (g > 1) {
                t.index[{j, k}] = fs.size();
                t.pairs.emplace_back(j, k, g);
                fs.push_back(g);
            }
        }
    t.module = FinModule{m.ring, std::move(fs)};
    return t;
}

ModuleMap tensor_map(const TensorStructure& src, const TensorStructure& dst,
                     const ModuleMap& f, const ModuleMap& g) {
    IntMat a(dst.module.rank(), src.module.rank());
    for (std::size_t col = 0; col < src.pairs.size(); ++col) {
        auto [j, k, gs] = src.pairs[col];
        for (std::size_t row = 0; row < dst.pairs.size(); ++row) {
            auto [b, d, gd] = dst.pairs[row];
            a.at(row, col) = f.matrix.at(b, j) * g.matrix.at(d, k);
        }
    }
    return ModuleMap(src.module, dst.module, std::move(a));
}

HomStructure hom_module(const FinModule& m, const FinModule& n) {
    if (m.ring.modulus != n.ring.modulus) throw domain_error("hom: ring mismatch");
    HomStructure h;
    h.from = m;
    h.to = n;
    std::vector<Int> fs;
    for (std::size_t j = 0; j < m.rank(); ++j)
        for (std::size_t i = 0; i < n.rank(); ++i) {
            Int g = gcd(m.factors[j], n.factors[i]);
            if (g > 1) {
                h.index[{j, i}] = fs.size();
                h.pairs.emplace_back(j, i, g);
                fs.push_back(g);
            }
        }
    h.module = FinModule{m.ring, std::move(fs)};
    return h;
}

std::vector<Int> hom_encode(const HomStructure& h, const ModuleMap& f) {
    if (f.source.factors != h.from.factors || f.target.factors != h.to.factors)
        throw domain_error("hom_encode: map does not match the hom structure");
    std::vector<Int> out(h.module.rank());
    for (std::size_t idx = 0; idx < h.pairs.size(); ++idx) {
        auto [j, i, g] = h.pairs[idx];
        Int unit = f.target.factors[i] / g;
        Int a = f.matrix.at(i, j);
        if (a % unit != 0) throw internal_error("hom_encode: entry not in the cyclic image");
        out[idx] = mod_norm(a / unit, g);
    }
    // entries of f outside recorded pairs are forced zero by well-definedness
    return out;
}

ModuleMap hom_decode(const HomStructure& h, const std::vector<Int>& element) {
    if (element.size() != h.module.rank()) throw domain_error("hom_decode: element size mismatch");
    IntMat m(h.to.rank(), h.from.rank());
    for (std::size_t idx = 0; idx < h.pairs.size(); ++idx) {
        auto [j, i, g] = h.pairs[idx];
        Int unit = h.to.factors[i] / g;
        m.at(i, j) = mod_norm(element[idx] * unit, h.to.factors[i]);
    }
    return ModuleMap(h.from, h.to, std::move(m));
}

ModuleMap hom_post(const HomStructure& src, const HomStructure& dst, const ModuleMap& v) {
    if (v.source.factors != src.to.factors || v.target.factors != dst.to.factors ||
        src.from.factors != dst.from.factors)
        throw domain_error("hom_post: structures do not match the map");
    IntMat m(dst.module.rank(), src.module.rank());
    for (std::size_t col = 0; col < src.pairs.size(); ++col) {
        auto [j, i, g] = src.pairs[col];
        Int unit = src.to.factors[i] / g;
        for (std::size_t row = 0; row < dst.pairs.size(); ++row) {
            auto [jd, k, gd] = dst.pairs[row];
            if (jd != j) continue;
            Int x = mod_norm(unit * v.matrix.at(k, i), dst.to.factors[k]);
            Int unit_d = dst.to.factors[k] / gd;
            if (x % unit_d != 0) throw internal_error("hom_post: value left the cyclic image");
            m.at(row, col) = x / unit_d;
        }
    }
    return ModuleMap(src.module, dst.module, std::move(m));
}

ModuleMap hom_pre(const HomStructure& src, const HomStructure& dst, const ModuleMap& u) {
    if (u.target.factors != src.from.factors || u.source.factors != dst.from.factors ||
        src.to.factors != dst.to.factors)
        throw domain_error("hom_pre: structures do not match the map");
    IntMat m(dst.module.rank(), src.module.rank());
    for (std::size_t col = 0; col < src.pairs.size(); ++col) {
        auto [j, i, g] = src.pairs[col];
        Int unit = src.to.factors[i] / g;
        for (std::size_t row = 0; row < dst.pairs.size(); ++row) {
            auto [jp, id, gd] = dst.pairs[row];
            if (id != i) continue;
            Int x = mod_norm(unit * u.matrix.at(j, jp), src.to.factors[i]);
            Int unit_d = dst.to.factors[i] / gd;
            if (x % unit_d != 0) throw internal_error("hom_pre: value left the cyclic image");
            m.at(row, col) = x / unit_d;
        }
    }
    return ModuleMap(src.module, dst.module, std::move(m));
}

SpecSubset support(const FinModule& m) {
    SpecSubset s;
    for (const auto& [p, e] : m.ring.primes)
        for (const Int& d : m.factors)
            if (d % p == 0) {
                s.primes.push_back(p);
                break;
            }
    return s;
}

TorsionPart torsion_part(const FinModule& m, const SpecSubset& p) {
    std::vector<Int> ts;
    std::vector<std::size_t> keep;
    std::vector<Int> scales;
    for (std::size_t j = 0; j < m.rank(); ++j) {
        Int part = 1;
        for (const Int& q : p.primes) part *= int_pow(q, valuation(m.factors[j], q));
        if (part > 1) {
            ts.push_back(part);
            keep.push_back(j);
            scales.push_back(m.factors[j] / part);
        }
    }
    FinModule t{m.ring, ts};
    IntMat incl(m.rank(), keep.size());
    for (std::size_t c = 0; c < keep.size(); ++c) incl.at(keep[c], c) = scales[c];
    return TorsionPart{t, ModuleMap(t, m, std::move(incl))};
}

bool is_injective(const FinModule& m) {
    for (const Int& d : m.factors)
        for (const auto& [p, e] : m.ring.primes) {
            int v = valuation(d, p);
            if (v > 0 && v != e) return false;
        }
    return true;
}

Envelope injective_envelope(const FinModule& m) {
    std::vector<Int> es;
    std::vector<std::pair<std::size_t, Int>> rows;  // (source factor, prime)
    for (std::size_t j = 0; j < m.rank(); ++j)
        for (const auto& [p, e] : m.ring.primes) {
            int v = valuation(m.factors[j], p);
            if (v > 0) {
                es.push_back(int_pow(p, e));
                rows.emplace_back(j, int_pow(p, e - v));
            }
        }
    FinModule env{m.ring, es};
    IntMat emb(env.rank(), m.rank());
    for (std::size_t r = 0; r < rows.size(); ++r) emb.at(r, rows[r].first) = rows[r].second;
    Envelope out{env, ModuleMap(m, env, std::move(emb))};
    if (!kernel(out.embed).module.is_zero())
        throw internal_error("injective_envelope: embedding not mono");
    return out;
}

DirectSum direct_sum(const CyclicRing& ring, const std::vector<FinModule>& parts) {
    DirectSum s;
    std::vector<Int> fs;
    for (const FinModule& p : parts) {
        s.offsets.push_back(fs.size());
        s.ranks.push_back(p.rank());
        fs.insert(fs.end(), p.factors.begin(), p.factors.end());
    }
    s.module = FinModule{ring, std::move(fs)};
    return s;
}

ModuleMap summand_inclusion(const DirectSum& sum, std::size_t i) {
    FinModule part{sum.module.ring,
                   {sum.module.factors.begin() + sum.offsets[i],
                    sum.module.factors.begin() + sum.offsets[i] + sum.ranks[i]}};
    IntMat m(sum.module.rank(), part.rank());
    for (std::size_t k = 0; k < part.rank(); ++k) m.at(sum.offsets[i] + k, k) = 1;
    return ModuleMap(part, sum.module, std::move(m));
}

ModuleMap summand_projection(const DirectSum& sum, std::size_t i) {
    FinModule part{sum.module.ring,
                   {sum.module.factors.begin() + sum.offsets[i],
                    sum.module.factors.begin() + sum.offsets[i] + sum.ranks[i]}};
    IntMat m(part.rank(), sum.module.rank());
    for (std::size_t k = 0; k < part.rank(); ++k) m.at(k, sum.offsets[i] + k) = 1;
    return ModuleMap(sum.module, part, std::move(m));
}

ModuleMap assemble_blocks(const DirectSum& tgt, const DirectSum& src,
                          const std::function<const ModuleMap*(std::size_t, std::size_t)>& blocks) {
    IntMat m(tgt.module.rank(), src.module.rank());
    for (std::size_t i = 0; i < tgt.offsets.size(); ++i)
        for (std::size_t j = 0; j < src.offsets.size(); ++j) {
            const ModuleMap* b = blocks(i, j);
            if (!b) continue;
            if (b->matrix.rows() != tgt.ranks[i] || b->matrix.cols() != src.ranks[j])
                throw internal_error("assemble_blocks: block shape mismatch");
            for (std::size_t r = 0; r < tgt.ranks[i]; ++r)
                for (std::size_t c = 0; c < src.ranks[j]; ++c)
                    m.at(tgt.offsets[i] + r, src.offsets[j] + c) = b->matrix.at(r, c);
        }
    return ModuleMap(src.module, tgt.module, std::move(m));
}

}  // namespace tslab
