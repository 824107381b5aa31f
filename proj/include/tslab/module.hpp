#pragma once

#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "tslab/intmat.hpp"
#include "tslab/ring.hpp"

namespace tslab {

// Finitely generated ℤ/n-module ⊕_j ℤ/d_j.  Empty factor list = zero module.
struct FinModule {
    CyclicRing ring;
    std::vector<Int> factors;  // each divides n and exceeds 1

    Int order() const;
    bool is_zero() const { return factors.empty(); }
    std::size_t rank() const { return factors.size(); }
    FinModule canonical() const;  // invariant factors d_1 | d_2 | ...

    bool operator==(const FinModule& o) const {
        return ring.modulus == o.ring.modulus && factors == o.factors;
    }
};

FinModule make_module(const CyclicRing& ring, std::vector<Int> factors);
FinModule zero_module(const CyclicRing& ring);
FinModule cyclic_module(const CyclicRing& ring, const Int& d);  // ℤ/gcd(d,n), 0 if unit
FinModule free_module(const CyclicRing& ring, std::size_t rank);

bool isomorphic(const FinModule& a, const FinModule& b);

struct ModuleMap {
    FinModule source, target;
    IntMat matrix;  // rows = target factors, cols = source factors

    ModuleMap() = default;
    ModuleMap(FinModule src, FinModule tgt, IntMat m);  // validates well-definedness

    static ModuleMap identity(const FinModule& m);
    static ModuleMap zero(const FinModule& src, const FinModule& tgt);
    static ModuleMap scalar(const FinModule& m, const Int& c);

    std::vector<Int> apply(const std::vector<Int>& x) const;
    bool is_zero() const { return matrix.is_zero(); }
    bool operator==(const ModuleMap& o) const;
};

ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g ∘ f
ModuleMap add(const ModuleMap& f, const ModuleMap& g);
ModuleMap negate(const ModuleMap& f);
ModuleMap scale(const Int& c, const ModuleMap& f);

struct KernelResult {
    FinModule module;  // canonical form
    ModuleMap incl;    // mono onto {x : f(x) = 0}
};
KernelResult kernel(const ModuleMap& f);

struct CokernelResult {
    FinModule module;  // canonical form
    ModuleMap proj;    // epi with proj ∘ f = 0
};
CokernelResult cokernel(const ModuleMap& f);

FinModule image_of(const ModuleMap& f);  // canonical form of im(f)

struct SubquotientResult {
    FinModule module;        // ker(f_out)/im(f_in), canonical
    FinModule kernel_module; // ker(f_out)
    ModuleMap kernel_incl;   // ker → source of f_out
    ModuleMap proj;          // ker → subquotient
};
SubquotientResult subquotient(const ModuleMap& f_in, const ModuleMap& f_out);

// Factor f through a monomorphism: g with incl ∘ g = f.
ModuleMap factor_through_mono(const ModuleMap& incl, const ModuleMap& f);
// Descend f through an epimorphism: g with g ∘ epi = f (requires ker epi ⊆ ker f).
ModuleMap descend_through_epi(const ModuleMap& epi, const ModuleMap& f);
// Extend f along a monomorphism into an injective target: g with g ∘ mono = f.
ModuleMap extend_along_mono(const ModuleMap& mono, const ModuleMap& f);
// One preimage of y under f, if any.
std::optional<std::vector<Int>> preimage(const ModuleMap& f, const std::vector<Int>& y);

// Tensor product with its pair bookkeeping, for functoriality.
struct TensorStructure {
    FinModule module;  // factor order = (j over M, k over N) lexicographic, gcd-1 pairs dropped
    std::vector<std::tuple<std::size_t, std::size_t, Int>> pairs;  // (j, k, gcd)
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
};
TensorStructure tensor_modules(const FinModule& m, const FinModule& n);
ModuleMap tensor_map(const TensorStructure& src, const TensorStructure& dst,
                     const ModuleMap& f, const ModuleMap& g);

// Hom module with evaluation data.  The (j,i) factor is generated by the map
// sending generator j of M to (e_i/gcd)·basis_i of N.
struct HomStructure {
    FinModule module;
    FinModule from, to;  // M and N
    std::vector<std::tuple<std::size_t, std::size_t, Int>> pairs;  // (j over M, i over N, gcd)
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
};
HomStructure hom_module(const FinModule& m, const FinModule& n);
std::vector<Int> hom_encode(const HomStructure& h, const ModuleMap& f);
ModuleMap hom_decode(const HomStructure& h, const std::vector<Int>& element);
// Hom(M, v): Hom(M, N) → Hom(M, N') for v: N → N'.
ModuleMap hom_post(const HomStructure& src, const HomStructure& dst, const ModuleMap& v);
// Hom(u, N): Hom(M, N) → Hom(M', N) for u: M' → M.
ModuleMap hom_pre(const HomStructure& src, const HomStructure& dst, const ModuleMap& u);

SpecSubset support(const FinModule& m);

struct TorsionPart {
    FinModule module;
    ModuleMap incl;
};
TorsionPart torsion_part(const FinModule& m, const SpecSubset& p);

bool is_injective(const FinModule& m);

struct Envelope {
    FinModule module;
    ModuleMap embed;
};
Envelope injective_envelope(const FinModule& m);

// Direct sums with offset bookkeeping for block assembly.
struct DirectSum {
    FinModule module;
    std::vector<std::size_t> offsets;  // offsets[i] = first factor index of summand i
    std::vector<std::size_t> ranks;
};
DirectSum direct_sum(const CyclicRing& ring, const std::vector<FinModule>& parts);
ModuleMap summand_inclusion(const DirectSum& sum, std::size_t i);
ModuleMap summand_projection(const DirectSum& sum, std::size_t i);
// blocks(i, j) returns the block target-part-i ← source-part-j, or nullptr for zero.
ModuleMap assemble_blocks(const DirectSum& tgt, const DirectSum& src,
                          const std::function<const ModuleMap*(std::size_t, std::size_t)>& blocks);

}  // namespace tslab
