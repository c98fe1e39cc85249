// Exact integer matrices over arbitrary-precision integers, Smith normal
// form, and the lattice computations (kernel, span, quotient) that back all
// group-theoretic operations in this project.

#ifndef QDHOM_INTMAT_HPP
#define QDHOM_INTMAT_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace qdhom {

using Int = mpz_class;

/// Dense integer matrix, row-major.  Small enough here that density is fine:
/// the matrices are indexed by simplices and group generators.
class IntMat {
public:
    IntMat() = default;
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static IntMat identity(int n);
    static IntMat zero(int rows, int cols) { return IntMat(rows, cols); }
    static IntMat diagonal(const std::vector<Int>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    bool is_zero() const;
    bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    IntMat transposed() const;
    IntMat operator*(const IntMat& o) const;
    IntMat operator-(const IntMat& o) const;

    /// Concatenate columns: [*this | o].  Row counts must agree.
    IntMat hcat(const IntMat& o) const;
    IntMat column(int j) const;
    std::vector<Int> col_vec(int j) const;

    IntMat mul_vec_as_col(const std::vector<Int>& v) const;  // returns rows x 1
    std::vector<Int> apply(const std::vector<Int>& v) const;

    std::string to_string() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

/// Result of the Smith normal form decomposition: u * m * v = d with u, v
/// unimodular, d diagonal with d1 | d2 | ... and all diagonal entries >= 0.
/// uinv and vinv are the tracked inverses, so m = uinv * d * vinv.
struct SmithForm {
    IntMat d;
    IntMat u, uinv;
    IntMat v, vinv;
    int rank = 0;             // number of nonzero diagonal entries
    std::vector<Int> diag;    // min(rows, cols) entries, chained
};

SmithForm smith_normal_form(const IntMat& m);

/// Basis of the integer kernel {x : m x = 0}, as matrix columns.
IntMat kernel_basis(const IntMat& m);

/// One integer solution of m x = b, if any.
std::optional<std::vector<Int>> solve_integer(const SmithForm& sf, const std::vector<Int>& b);
std::optional<std::vector<Int>> solve_integer(const IntMat& m, const std::vector<Int>& b);

/// Basis of the column span (as a full-column-rank matrix).
IntMat column_span_basis(const SmithForm& sf);

/// A finitely generated abelian group in normal form.
struct AbGroup {
    std::vector<Int> invariant_factors;  // d1 | d2 | ..., each >= 2
    int free_rank = 0;

    bool is_trivial() const { return invariant_factors.empty() && free_rank == 0; }
    bool is_finite() const { return free_rank == 0; }
    Int order() const;  // valid only when finite
    int num_generators() const { return static_cast<int>(invariant_factors.size()) + free_rank; }
    /// Order of generator i: an invariant factor, or 0 for a free generator.
    Int generator_order(int i) const;
    bool operator==(const AbGroup& o) const = default;
    std::string to_string() const;  // "0", "Z2 x Z4", "Z^2 x Z3", ...
};

/// Normalize an arbitrary list of cyclic orders (0 = infinite) into
/// invariant-factor form.
AbGroup normalize_orders(const std::vector<Int>& orders);

/// Quotient L_num / L_den of two sublattices of Z^a given by generating
/// columns, with span(den) contained in span(num).  Carries enough data to
/// write further ambient vectors in class coordinates.
class LatticeQuotient {
public:
    LatticeQuotient(const IntMat& num, const IntMat& den);

    const AbGroup& group() const { return group_; }
    /// Ambient-coordinate representatives, one column per group generator
    /// (invariant-factor generators first, then free generators).
    const IntMat& representatives() const { return reps_; }

    /// Class coordinates of an ambient vector (reduced modulo the generator
    /// orders); nullopt if the vector is not in span(num).
    std::optional<std::vector<Int>> coordinates(const std::vector<Int>& v) const;
    bool contains(const std::vector<Int>& v) const;
    /// True iff v lies in span(den), i.e. represents the zero class.
    bool is_zero_class(const std::vector<Int>& v) const;

private:
    AbGroup group_;
    IntMat reps_;          // ambient x k
    IntMat den_;           // ambient x h (verbatim denominator generators)
    SmithForm coord_sf_;   // SNF of [reps | den], for coordinate solves
    SmithForm den_sf_;     // SNF of den, for zero-class tests
};

/// Relation columns for the presentation Z^k -> G of a group whose generator
/// orders are given (order 0 contributes no relation).
IntMat relation_columns(const std::vector<Int>& orders);

Int product_of(const std::vector<Int>& v);

}  // namespace qdhom

#endif
