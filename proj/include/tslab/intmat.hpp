#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tslab {

using Int = boost::multiprecision::cpp_int;

// Thrown on bad user input (unrepresentable ring, malformed map, ...).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an internal consistency check fails.  These are bug traps and
// should never fire on any input that passed validation.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

Int mod_norm(const Int& a, const Int& m);  // representative in [0, m)

// g = gcd(a, b) together with u*a + v*b = g.
struct ExtGcd {
    Int g, u, v;
};
ExtGcd ext_gcd(Int a, Int b);

// Dense matrix of arbitrary-precision integers, row-major.
class IntMat {
  public:
    IntMat() = default;
    IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMat(std::size_t rows, std::size_t cols, std::vector<Int> entries);

    static IntMat identity(std::size_t k);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    IntMat transpose() const;
    bool is_zero() const;
    bool operator==(const IntMat& o) const = default;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void add_row(std::size_t dst, std::size_t src, const Int& c);  // row dst += c * row src
    void add_col(std::size_t dst, std::size_t src, const Int& c);
    void scale_row(std::size_t i, const Int& c);
    void scale_col(std::size_t j, const Int& c);

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

IntMat operator*(const IntMat& a, const IntMat& b);
std::vector<Int> operator*(const IntMat& a, const std::vector<Int>& x);
std::string to_string(const IntMat& a);

// u * a * v = d with u, v unimodular and d diagonal, entries nonnegative and
// each dividing the next.
struct SmithResult {
    IntMat u, d, v;
    std::size_t rank = 0;  // number of nonzero diagonal entries
};
SmithResult smith_normal_form(const IntMat& a);

Int determinant(IntMat a);  // Bareiss fraction-free elimination
bool is_unimodular(const IntMat& a);

// One solution x of a*x = b over the integers, if any.
std::optional<std::vector<Int>> solve_exact(const IntMat& a, const std::vector<Int>& b);

// One solution x of a*x ≡ b where row i is read modulo mod[i] (mod[i] = 0
// means the equation in row i is exact).
std::optional<std::vector<Int>> solve_mod(const IntMat& a, const std::vector<Int>& b,
                                          const std::vector<Int>& mod);

// Basis of the lattice {x : a*x = 0}, one vector per column.
std::vector<std::vector<Int>> kernel_lattice(const IntMat& a);

}  // namespace tslab
