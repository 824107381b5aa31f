#include "tslab/intmat.hpp"

#include <algorithm>
#include <sstream>

namespace tslab {

Int mod_norm(const Int& a, const Int& m) {
    if (m == 0) return a;
    Int r = a % m;
    if (r < 0) r += abs(m);
    return r;
}

ExtGcd ext_gcd(Int a, Int b) {
    // Iterative extended Euclid; keeps g ≥ 0.
    Int old_r = a, r = b;
    Int old_u = 1, u = 0;
    Int old_v = 0, v = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int t;
        t = old_r - q * r; old_r = r; r = t;
        t = old_u - q * u; old_u = u; u = t;
        t = old_v - q * v; old_v = v; v = t;
    }
    if (old_r < 0) { old_r = -old_r; old_u = -old_u; old_v = -old_v; }
    return {old_r, old_u, old_v};
}

IntMat::IntMat(std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_) throw internal_error("IntMat: entry count mismatch");
}

IntMat IntMat::identity(std::size_t k) {
    IntMat m(k, k);
    for (std::size_t i = 0; i < k; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::transpose() const {
    IntMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

bool IntMat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

void IntMat::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMat::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMat::add_row(std::size_t dst, std::size_t src, const Int& c) {
    for (std::size_t k = 0; k < cols_; ++k) at(dst, k) += c * at(src, k);
}

void IntMat::add_col(std::size_t dst, std::size_t src, const Int& c) {
    for (std::size_t k = 0; k < rows_; ++k) at(k, dst) += c * at(k, src);
}

void IntMat::scale_row(std::size_t i, const Int& c) {
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) *= c;
}

void IntMat::scale_col(std::size_t j, const Int& c) {
    for (std::size_t k = 0; k < rows_; ++k) at(k, j) *= c;
}

IntMat operator*(const IntMat& a, const IntMat& b) {
    if (a.cols() != b.rows()) throw internal_error("IntMat multiply: shape mismatch");
    IntMat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

std::vector<Int> operator*(const IntMat& a, const std::vector<Int>& x) {
    if (a.cols() != x.size()) throw internal_error("IntMat apply: shape mismatch");
    std::vector<Int> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a.at(i, j) * x[j];
    return y;
}

std::string to_string(const IntMat& a) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? " " : "") << a.at(i, j);
    }
    os << "]";
    return os.str();
}

namespace {

// Position of a nonzero entry of minimal absolute value in the submatrix
// d[t.., t..], if any.
std::optional<std::pair<std::size_t, std::size_t>> find_pivot(const IntMat& d, std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Int best_abs = 0;
    for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j) {
            if (d.at(i, j) == 0) continue;
            Int a = abs(d.at(i, j));
            if (!best || a < best_abs) {
                best = {{i, j}};
                best_abs = a;
            }
        }
    return best;
}

}  // namespace

SmithResult smith_normal_form(const IntMat& a) {
    const std::size_t r = a.rows(), c = a.cols();
    SmithResult res{IntMat::identity(r), a, IntMat::identity(c), 0};
    IntMat& d = res.d;
    IntMat& u = res.u;
    IntMat& v = res.v;

    std::size_t t = 0;
    while (t < std::min(r, c)) {
        auto piv = find_pivot(d, t);
        if (!piv) break;
        d.swap_rows(t, piv->first);
        u.swap_rows(t, piv->first);
        d.swap_cols(t, piv->second);
        v.swap_cols(t, piv->second);

        bool clean = false;
        while (!clean) {
            clean = true;
            // Kill column t below the pivot.
            for (std::size_t i = t + 1; i < r; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = d.at(i, t) / d.at(t, t);
                d.add_row(i, t, -q);
                u.add_row(i, t, -q);
                if (d.at(i, t) != 0) {  // remainder smaller than pivot: promote it
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    clean = false;
                }
            }
            if (!clean) continue;
            // Kill row t right of the pivot.
            for (std::size_t j = t + 1; j < c; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = d.at(t, j) / d.at(t, t);
                d.add_col(j, t, -q);
                v.add_col(j, t, -q);
                if (d.at(t, j) != 0) {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // Pivot must divide the whole remaining block for the divisor
            // chain; drag a bad row up and restart the cleanup.
            for (std::size_t i = t + 1; i < r && clean; ++i)
                for (std::size_t j = t + 1; j < c && clean; ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        d.add_row(t, i, 1);
                        u.add_row(t, i, 1);
                        clean = false;
                    }
        }
        if (d.at(t, t) < 0) {
            d.scale_row(t, -1);
            u.scale_row(t, -1);
        }
        ++t;
    }
    res.rank = 0;
    for (std::size_t i = 0; i < std::min(r, c); ++i)
        if (d.at(i, i) != 0) ++res.rank;
    return res;
}

Int determinant(IntMat a) {
    if (a.rows() != a.cols()) throw internal_error("determinant: matrix not square");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && a.at(s, k) == 0) ++s;
            if (s == n) return 0;
            a.swap_rows(k, s);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

bool is_unimodular(const IntMat& a) {
    if (a.rows() != a.cols()) return false;
    Int det = determinant(a);
    return det == 1 || det == -1;
}

std::optional<std::vector<Int>> solve_exact(const IntMat& a, const std::vector<Int>& b) {
    if (b.size() != a.rows()) throw internal_error("solve_exact: rhs size mismatch");
    SmithResult s = smith_normal_form(a);
    std::vector<Int> ub = s.u * b;
    std::vector<Int> y(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Int di = (i < std::min(a.rows(), a.cols())) ? s.d.at(i, i) : Int(0);
        if (di == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (i >= a.cols()) return std::nullopt;
            if (ub[i] % di != 0) return std::nullopt;
            y[i] = ub[i] / di;
        }
    }
    return s.v * y;
}

std::optional<std::vector<Int>> solve_mod(const IntMat& a, const std::vector<Int>& b,
                                          const std::vector<Int>& mod) {
    if (mod.size() != a.rows()) throw internal_error("solve_mod: modulus row mismatch");
    // Slack columns turn congruences into exact equations.
    std::size_t extra = 0;
    for (const Int& m : mod)
        if (m != 0) ++extra;
    IntMat aug(a.rows(), a.cols() + extra);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    std::size_t col = a.cols();
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (mod[i] != 0) aug.at(i, col++) = mod[i];
    auto sol = solve_exact(aug, b);
    if (!sol) return std::nullopt;
    sol->resize(a.cols());
    return sol;
}

std::vector<std::vector<Int>> kernel_lattice(const IntMat& a) {
    SmithResult s = smith_normal_form(a);
    std::vector<std::vector<Int>> basis;
    for (std::size_t j = s.rank; j < a.cols(); ++j) {
        std::vector<Int> v(a.cols());
        for (std::size_t i = 0; i < a.cols(); ++i) v[i] = s.v.at(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace tslab
