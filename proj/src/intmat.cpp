#include "intmat.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace qdhom {

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::diagonal(const std::vector<Int>& d) {
    IntMat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

bool IntMat::is_zero() const {
    for (const Int& x : a_)
        if (x != 0) return false;
    return true;
}

IntMat IntMat::transposed() const {
    IntMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMat IntMat::operator*(const IntMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMat: dimension mismatch in product");
    IntMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

IntMat IntMat::operator-(const IntMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("IntMat: dimension mismatch in difference");
    IntMat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

IntMat IntMat::hcat(const IntMat& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("IntMat: row mismatch in hcat");
    IntMat r(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

IntMat IntMat::column(int j) const {
    IntMat c(rows_, 1);
    for (int i = 0; i < rows_; ++i) c.at(i, 0) = at(i, j);
    return c;
}

std::vector<Int> IntMat::col_vec(int j) const {
    std::vector<Int> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

IntMat IntMat::mul_vec_as_col(const std::vector<Int>& v) const {
    IntMat c(rows_, 1);
    auto r = apply(v);
    for (int i = 0; i < rows_; ++i) c.at(i, 0) = r[i];
    return c;
}

std::vector<Int> IntMat::apply(const std::vector<Int>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("IntMat: vector length mismatch");
    std::vector<Int> r(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
    return r;
}

std::string IntMat::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (int j = 0; j < cols_; ++j) os << at(i, j).get_str() << (j + 1 < cols_ ? " " : "");
        os << (i + 1 < rows_ ? ";\n" : "]");
    }
    if (rows_ == 0) os << "[]";
    return os.str();
}

namespace {

// Elementary operations applied simultaneously to the work matrix and the
// transform pair (t, tinv) so that the invariant u * m * v = a is preserved.
struct RowOps {
    IntMat *a, *u, *uinv;
    void swap(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < a->cols(); ++c) std::swap(a->at(i, c), a->at(j, c));
        for (int c = 0; c < u->cols(); ++c) std::swap(u->at(i, c), u->at(j, c));
        for (int r = 0; r < uinv->rows(); ++r) std::swap(uinv->at(r, i), uinv->at(r, j));
    }
    // row_i -= q * row_t
    void axpy(int i, int t, const Int& q) {
        if (q == 0) return;
        for (int c = 0; c < a->cols(); ++c) a->at(i, c) -= q * a->at(t, c);
        for (int c = 0; c < u->cols(); ++c) u->at(i, c) -= q * u->at(t, c);
        for (int r = 0; r < uinv->rows(); ++r) uinv->at(r, t) += q * uinv->at(r, i);
    }
    void negate(int i) {
        for (int c = 0; c < a->cols(); ++c) a->at(i, c) = -a->at(i, c);
        for (int c = 0; c < u->cols(); ++c) u->at(i, c) = -u->at(i, c);
        for (int r = 0; r < uinv->rows(); ++r) uinv->at(r, i) = -uinv->at(r, i);
    }
};

struct ColOps {
    IntMat *a, *v, *vinv;
    void swap(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < a->rows(); ++r) std::swap(a->at(r, i), a->at(r, j));
        for (int r = 0; r < v->rows(); ++r) std::swap(v->at(r, i), v->at(r, j));
        for (int c = 0; c < vinv->cols(); ++c) std::swap(vinv->at(i, c), vinv->at(j, c));
    }
    // col_j -= q * col_t
    void axpy(int j, int t, const Int& q) {
        if (q == 0) return;
        for (int r = 0; r < a->rows(); ++r) a->at(r, j) -= q * a->at(r, t);
        for (int r = 0; r < v->rows(); ++r) v->at(r, j) -= q * v->at(r, t);
        for (int c = 0; c < vinv->cols(); ++c) vinv->at(t, c) += q * vinv->at(j, c);
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMat& m) {
    SmithForm sf;
    sf.d = m;
    const int r = m.rows(), c = m.cols();
    sf.u = IntMat::identity(r);
    sf.uinv = IntMat::identity(r);
    sf.v = IntMat::identity(c);
    sf.vinv = IntMat::identity(c);
    RowOps rop{&sf.d, &sf.u, &sf.uinv};
    ColOps cop{&sf.d, &sf.v, &sf.vinv};

    const int steps = std::min(r, c);
    for (int t = 0; t < steps; ++t) {
        // Pivot: nonzero entry of least absolute value in the trailing block.
        auto find_pivot = [&](int& pi, int& pj) -> bool {
            bool found = false;
            Int best;
            for (int i = t; i < r; ++i)
                for (int j = t; j < c; ++j) {
                    const Int& x = sf.d.at(i, j);
                    if (x == 0) continue;
                    Int ax = abs(x);
                    if (!found || ax < best) {
                        found = true;
                        best = ax;
                        pi = i;
                        pj = j;
                    }
                }
            return found;
        };

        int pi = t, pj = t;
        if (!find_pivot(pi, pj)) break;
        rop.swap(t, pi);
        cop.swap(t, pj);

        for (;;) {
            // Clear the pivot column and row; restart with a smaller pivot
            // whenever a division leaves a remainder.
            bool clean = true;
            for (int i = t + 1; i < r; ++i) {
                if (sf.d.at(i, t) == 0) continue;
                Int q = sf.d.at(i, t) / sf.d.at(t, t);  // truncated
                rop.axpy(i, t, q);
                if (sf.d.at(i, t) != 0) {
                    rop.swap(t, i);  // remainder is strictly smaller
                    clean = false;
                }
            }
            if (!clean) continue;
            for (int j = t + 1; j < c; ++j) {
                if (sf.d.at(t, j) == 0) continue;
                Int q = sf.d.at(t, j) / sf.d.at(t, t);
                cop.axpy(j, t, q);
                if (sf.d.at(t, j) != 0) {
                    cop.swap(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;

            // Divisibility pass: every trailing entry must be divisible by
            // the pivot for the final diagonal to be a chain.
            bool fixed = false;
            for (int i = t + 1; i < r && !fixed; ++i)
                for (int j = t + 1; j < c && !fixed; ++j)
                    if (sf.d.at(i, j) % sf.d.at(t, t) != 0) {
                        rop.axpy(t, i, Int(-1));  // row_t += row_i
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (sf.d.at(t, t) < 0) rop.negate(t);
    }

    sf.diag.resize(steps);
    for (int t = 0; t < steps; ++t) {
        sf.diag[t] = sf.d.at(t, t);
        if (sf.diag[t] != 0) sf.rank = t + 1;
    }
    return sf;
}

IntMat kernel_basis(const IntMat& m) {
    if (m.cols() == 0) return IntMat(0, 0);
    if (m.rows() == 0) return IntMat::identity(m.cols());
    SmithForm sf = smith_normal_form(m);
    IntMat k(m.cols(), m.cols() - sf.rank);
    for (int j = sf.rank; j < m.cols(); ++j)
        for (int i = 0; i < m.cols(); ++i) k.at(i, j - sf.rank) = sf.v.at(i, j);
    return k;
}

std::optional<std::vector<Int>> solve_integer(const SmithForm& sf, const std::vector<Int>& b) {
    const int r = sf.d.rows(), c = sf.d.cols();
    if (static_cast<int>(b.size()) != r) throw std::invalid_argument("solve_integer: rhs length mismatch");
    std::vector<Int> ub = sf.u.apply(b);
    std::vector<Int> y(c, Int(0));
    for (int i = 0; i < r; ++i) {
        if (i < sf.rank) {
            if (ub[i] % sf.diag[i] != 0) return std::nullopt;
            y[i] = ub[i] / sf.diag[i];
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return sf.v.apply(y);
}

std::optional<std::vector<Int>> solve_integer(const IntMat& m, const std::vector<Int>& b) {
    return solve_integer(smith_normal_form(m), b);
}

IntMat column_span_basis(const SmithForm& sf) {
    IntMat b(sf.d.rows(), sf.rank);
    for (int j = 0; j < sf.rank; ++j)
        for (int i = 0; i < sf.d.rows(); ++i) b.at(i, j) = sf.uinv.at(i, j) * sf.diag[j];
    return b;
}

Int AbGroup::order() const {
    Int o = 1;
    for (const Int& d : invariant_factors) o *= d;
    return o;
}

Int AbGroup::generator_order(int i) const {
    if (i < static_cast<int>(invariant_factors.size())) return invariant_factors[i];
    return 0;
}

std::string AbGroup::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Int& d : invariant_factors) {
        if (!first) os << " x ";
        os << "Z" << d.get_str();
        first = false;
    }
    if (free_rank > 0) {
        if (!first) os << " x ";
        if (free_rank == 1)
            os << "Z";
        else
            os << "Z^" << free_rank;
    }
    return os.str();
}

AbGroup normalize_orders(const std::vector<Int>& orders) {
    // SNF of the diagonal relation matrix does the prime-power shuffling.
    AbGroup g;
    std::vector<Int> finite;
    for (const Int& d : orders) {
        if (d == 0)
            g.free_rank += 1;
        else if (d > 1)
            finite.push_back(d);
        else if (d < 0)
            throw std::invalid_argument("normalize_orders: negative order");
    }
    if (!finite.empty()) {
        SmithForm sf = smith_normal_form(IntMat::diagonal(finite));
        for (const Int& d : sf.diag)
            if (d > 1) g.invariant_factors.push_back(d);
    }
    return g;
}

IntMat relation_columns(const std::vector<Int>& orders) {
    int n = static_cast<int>(orders.size());
    int k = 0;
    for (const Int& d : orders)
        if (d != 0) ++k;
    IntMat r(n, k);
    int j = 0;
    for (int i = 0; i < n; ++i)
        if (orders[i] != 0) r.at(i, j++) = orders[i];
    return r;
}

Int product_of(const std::vector<Int>& v) {
    Int p = 1;
    for (const Int& x : v) p *= x;
    return p;
}

LatticeQuotient::LatticeQuotient(const IntMat& num, const IntMat& den) : den_(den) {
    const int ambient = num.rows();
    if (den.rows() != ambient && den.cols() != 0)
        throw std::invalid_argument("LatticeQuotient: ambient dimension mismatch");

    SmithForm nsf = smith_normal_form(num);
    const int s = nsf.rank;
    IntMat basis = column_span_basis(nsf);  // ambient x s

    // Denominator generators in basis coordinates: basis * X = den.
    // basis = uinv[:,j] * diag_j, so X_j = (u * den)_j / diag_j.
    IntMat x(s, den.cols());
    for (int jc = 0; jc < den.cols(); ++jc) {
        std::vector<Int> ud = nsf.u.apply(den.col_vec(jc));
        for (int i = 0; i < ambient; ++i) {
            if (i < s) {
                if (ud[i] % nsf.diag[i] != 0)
                    throw std::invalid_argument("LatticeQuotient: denominator not contained in numerator span");
                x.at(i, jc) = ud[i] / nsf.diag[i];
            } else if (ud[i] != 0) {
                throw std::invalid_argument("LatticeQuotient: denominator not contained in numerator span");
            }
        }
    }

    SmithForm xsf = smith_normal_form(x);
    // In the basis given by the columns of xsf.uinv, the quotient splits as
    // a direct sum of cyclics with the diagonal orders (0 beyond the rank).
    std::vector<int> kept;
    std::vector<Int> orders;
    for (int j = 0; j < s; ++j) {
        Int e = j < static_cast<int>(xsf.diag.size()) ? xsf.diag[j] : Int(0);
        if (e == 1) continue;  // collapsed generator
        kept.push_back(j);
        orders.push_back(e);
    }
    group_.free_rank = 0;
    for (size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] == 0)
            group_.free_rank += 1;
        else
            group_.invariant_factors.push_back(orders[i]);
    }

    IntMat gen_basis = basis * xsf.uinv;  // ambient x s
    reps_ = IntMat(ambient, static_cast<int>(kept.size()));
    for (size_t j = 0; j < kept.size(); ++j)
        for (int i = 0; i < ambient; ++i) reps_.at(i, static_cast<int>(j)) = gen_basis.at(i, kept[j]);

    coord_sf_ = smith_normal_form(reps_.hcat(den_));
    den_sf_ = smith_normal_form(den_);
}

std::optional<std::vector<Int>> LatticeQuotient::coordinates(const std::vector<Int>& v) const {
    auto sol = solve_integer(coord_sf_, v);
    if (!sol) return std::nullopt;
    const int k = reps_.cols();
    std::vector<Int> c(sol->begin(), sol->begin() + k);
    for (int i = 0; i < k; ++i) {
        Int d = group_.generator_order(i);
        if (d != 0) {
            c[i] %= d;
            if (c[i] < 0) c[i] += d;
        }
    }
    return c;
}

bool LatticeQuotient::contains(const std::vector<Int>& v) const {
    return coordinates(v).has_value();
}

bool LatticeQuotient::is_zero_class(const std::vector<Int>& v) const {
    return solve_integer(den_sf_, v).has_value();
}

}  // namespace qdhom
