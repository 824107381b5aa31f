#pragma once

// Element-by-element recomputations used as an independent oracle against the
// SNF-based fast paths.  Everything here is exponential in the module size
// and meant for desk-scale inputs only.

#include <set>

#include "tslab/module.hpp"

namespace tslab::brute {

inline std::vector<std::vector<Int>> elements(const FinModule& m) {
    std::vector<std::vector<Int>> out{{}};
    for (const Int& d : m.factors) {
        std::vector<std::vector<Int>> next;
        next.reserve(out.size() * static_cast<std::size_t>(d));
        for (const auto& v : out)
            for (Int x = 0; x < d; ++x) {
                auto w = v;
                w.push_back(x);
                next.push_back(std::move(w));
            }
        out = std::move(next);
    }
    return out;
}

inline std::set<std::vector<Int>> kernel_set(const ModuleMap& f) {
    std::set<std::vector<Int>> ker;
    std::vector<Int> zero(f.target.rank());
    for (const auto& x : elements(f.source))
        if (f.apply(x) == zero) ker.insert(x);
    return ker;
}

inline std::set<std::vector<Int>> image_set(const ModuleMap& f) {
    std::set<std::vector<Int>> im;
    for (const auto& x : elements(f.source)) im.insert(f.apply(x));
    return im;
}

// |Hom(M, N)| counted by enumerating admissible generator images.
inline Int hom_count(const FinModule& m, const FinModule& n) {
    Int total = 1;
    for (const Int& d : m.factors) {
        Int killed = 0;
        for (const auto& y : elements(n)) {
            bool ok = true;
            for (std::size_t i = 0; i < n.rank(); ++i)
                if (mod_norm(d * y[i], n.factors[i]) != 0) {
                    ok = false;
                    break;
                }
            if (ok) ++killed;
        }
        total *= killed;
    }
    return total;
}

// Does every nonzero cyclic submodule of the target meet the image of ι?
inline bool essential_embedding(const ModuleMap& iota) {
    auto img = image_set(iota);
    std::vector<Int> zero(iota.target.rank());
    for (const auto& e : elements(iota.target)) {
        if (e == zero) continue;
        bool meets = false;
        Int k = 1;
        for (; k <= iota.target.ring.modulus && !meets; ++k) {
            std::vector<Int> mult(e.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                mult[i] = mod_norm(k * e[i], iota.target.factors[i]);
            if (mult != zero && img.count(mult)) meets = true;
        }
        if (!meets) return false;
    }
    return true;
}

}  // namespace tslab::brute
