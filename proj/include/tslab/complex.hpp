#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tslab/module.hpp"

namespace tslab {

// Bounded cochain complex in normal form: zero coordinates are trimmed at
// both ends, and d∘d = 0 is checked at construction.
struct Complex {
    CyclicRing ring;
    int min_degree = 0;
    std::vector<FinModule> coords;  // coords[i] sits in degree min_degree + i
    std::vector<ModuleMap> diffs;   // diffs[i] : coords[i] → coords[i+1]

    bool is_zero() const { return coords.empty(); }
    int top_degree() const { return min_degree + static_cast<int>(coords.size()) - 1; }
    bool in_range(int n) const {
        return !is_zero() && n >= min_degree && n <= top_degree();
    }
    FinModule coord_at(int n) const;
    ModuleMap diff_at(int n) const;  // zero map outside the stored range

    bool operator==(const Complex& o) const;
};

Complex make_complex(const CyclicRing& ring, int min_degree, std::vector<FinModule> coords,
                     std::vector<ModuleMap> diffs);
Complex zero_complex(const CyclicRing& ring);
Complex stalk_complex(const CyclicRing& ring, const FinModule& m, int degree);

bool all_free(const Complex& x);

struct ChainMap {
    Complex source, target;
    std::map<int, ModuleMap> components;  // absent degree = zero map

    ModuleMap component(int n) const;
    bool operator==(const ChainMap& o) const;
};

ChainMap make_chain_map(Complex source, Complex target, std::map<int, ModuleMap> components);
ChainMap identity_chain_map(const Complex& x);
ChainMap zero_chain_map(const Complex& x, const Complex& y);

struct GradedModule {
    CyclicRing ring;
    std::map<int, FinModule> parts;  // nonzero entries only

    FinModule at(int n) const;
    bool is_zero() const { return parts.empty(); }
    std::optional<int> lowest() const;   // cohomological infimum
    std::optional<int> highest() const;  // cohomological supremum
};

Complex shift(const Complex& x, int k);  // X[k]^n = X^{n+k}, d ↦ (−1)^k d

struct ConeResult {
    Complex cone;
    ChainMap from_target;       // Y → cone
    ChainMap to_shifted_source; // cone → X[1]
};
ConeResult cone(const ChainMap& f);

enum class TruncSide { le, gt };

struct TruncationResult {
    Complex part;
    ChainMap cmp;  // part → X for le, X → part for gt
};
TruncationResult soft_truncate(const Complex& x, int n, TruncSide side);
Complex brutal_truncate(const Complex& x, int n, TruncSide side);

Complex tensor_complexes(const Complex& x, const Complex& y);
ChainMap tensor_chain_map(const ChainMap& f, const Complex& y);  // f ⊗ id_Y
Complex hom_complex(const Complex& x, const Complex& y);

GradedModule cohomology(const Complex& x);
FinModule cohomology_at(const Complex& x, int n);
ModuleMap cohomology_map(const ChainMap& f, int n);

bool is_acyclic(const Complex& x);
bool is_quasi_iso(const ChainMap& f);
bool same_cohomology(const Complex& x, const Complex& y);

Complex koszul(const CyclicRing& ring, const std::vector<Int>& xs);
Complex cech_tilde(const CyclicRing& ring, const std::vector<Int>& xs);

struct CechTriangle {
    Complex tilde;      // Č~(I), degrees [0, 1]
    Complex unit;       // R[0]
    Complex cech;       // cone of tilde → unit
    ChainMap to_unit;       // Č~(I) → R[0]
    ChainMap from_unit;     // R[0] → Č(I)
    ChainMap to_shifted;    // Č(I) → Č~(I)[1]
};
CechTriangle cech_triangle(const CyclicRing& ring, const Ideal& ideal);

struct ReplacementResult {
    Complex p;     // free coordinates in [floor, top]
    ChainMap map;  // P → X, cohomology isomorphism above floor
};
ReplacementResult projective_replacement(const Complex& x, int floor);

FinModule hom_derived(const Complex& x, const Complex& y, int k);  // Hom_D(X, Y[k])

Complex compact_dual(const Complex& s);  // Hom•(S, R[0]); S must be free

FinModule tower_colimit(const std::vector<FinModule>& ms, const std::vector<ModuleMap>& fs);

struct DirectSumComplex {
    Complex total;
    std::vector<ChainMap> incls;
    std::vector<ChainMap> projs;
};
DirectSumComplex direct_sum_complexes(const CyclicRing& ring, const std::vector<Complex>& parts);

}  // namespace tslab
