#include "aeq/modlab.hpp"

#include <algorithm>
#include <utility>

namespace aeq {

CoeffRing::CoeffRing(std::uint64_t p, unsigned k) : p_(p), k_(k), q_(1) {
    if (k_ == 0) throw InputError("precision k must be at least 1");
    bool prime = p_ >= 2;
    for (std::uint64_t d = 2; prime && d * d <= p_; ++d) prime = p_ % d != 0;
    if (!prime) throw InputError(std::to_string(p_) + " is not prime");
    for (unsigned i = 0; i < k_; ++i) {
        q_ *= p_;
        if (q_ >= (1ULL << 32)) throw InputError("p^k must be below 2^32");
    }
}

std::uint64_t CoeffRing::reduce(std::int64_t v) const {
    auto const q = static_cast<std::int64_t>(q_);
    std::int64_t r = v % q;
    return static_cast<std::uint64_t>(r < 0 ? r + q : r);
}

unsigned CoeffRing::valuation(std::uint64_t a) const {
    a %= q_;
    if (a == 0) return k_;
    unsigned e = 0;
    while (a % p_ == 0) {
        a /= p_;
        ++e;
    }
    return e;
}

std::uint64_t CoeffRing::inverse(std::uint64_t a) const {
    if (!is_unit(a)) throw PreconditionError(std::to_string(a) + " is not a unit mod " + std::to_string(q_));
    std::int64_t r0 = static_cast<std::int64_t>(q_), r1 = static_cast<std::int64_t>(a % q_);
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t const t = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - t * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - t * s1);
    }
    return reduce(s0);
}

std::uint64_t CoeffRing::p_power(unsigned e) const {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e && i < k_; ++i) r *= p_;
    return e >= k_ ? 0 : r;
}

std::string CoeffRing::to_string() const {
    return k_ == 1 ? "F_" + std::to_string(p_) : "Z/" + std::to_string(p_) + "^" + std::to_string(k_);
}

Matrix::Matrix(CoeffRing ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(CoeffRing ring, std::size_t n) {
    Matrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1 % ring.modulus();
    return m;
}

Matrix Matrix::from_rows(CoeffRing ring, std::vector<std::vector<std::int64_t>> const& rows) {
    std::size_t const c = rows.empty() ? 0 : rows.front().size();
    Matrix m(ring, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw InputError("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = ring.reduce(rows[i][j]);
    }
    return m;
}

Matrix Matrix::from_columns(CoeffRing ring, std::size_t rows, std::vector<Vec> const& cols) {
    Matrix m(ring, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw InputError("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i] % ring.modulus();
    }
    return m;
}

Vec Matrix::column(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

Vec Matrix::row(std::size_t i) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Matrix Matrix::columns(std::vector<std::size_t> const& idx) const {
    Matrix m(ring_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) m.at(i, j) = (*this)(i, idx[j]);
    return m;
}

Matrix Matrix::rows_subset(std::vector<std::size_t> const& idx) const {
    Matrix m(ring_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = (*this)(idx[i], j);
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = (*this)(i, j);
    return m;
}

Matrix Matrix::hcat(Matrix const& right) const {
    if (right.rows_ != rows_ || !(right.ring_ == ring_)) throw InputError("hcat: shape or ring mismatch");
    Matrix m(ring_, rows_, cols_ + right.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < right.cols_; ++j) m.at(i, cols_ + j) = right(i, j);
    }
    return m;
}

Matrix Matrix::vcat(Matrix const& below) const {
    if (below.cols_ != cols_ || !(below.ring_ == ring_)) throw InputError("vcat: shape or ring mismatch");
    Matrix m(ring_, rows_ + below.rows_, cols_);
    std::copy(data_.begin(), data_.end(), m.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return m;
}

Matrix Matrix::reduced(CoeffRing const& target) const {
    if (target.p() != ring_.p() || target.k() > ring_.k())
        throw InputError("cannot reduce " + ring_.to_string() + " to " + target.to_string());
    Matrix m(target, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] % target.modulus();
    return m;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](std::uint64_t v) { return v == 0; });
}

Vec Matrix::apply(Vec const& v) const {
    if (v.size() != cols_) throw InputError("apply: vector length mismatch");
    Vec out(rows_, 0);
    std::uint64_t const q = ring_.modulus();
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            std::uint64_t const a = data_[i * cols_ + j];
            if (a) acc = (acc + a * (v[j] % q)) % q;
        }
        out[i] = acc;
    }
    return out;
}

Matrix Matrix::operator*(Matrix const& b) const {
    if (cols_ != b.rows_ || !(ring_ == b.ring_)) throw InputError("matrix product: shape or ring mismatch");
    Matrix m(ring_, rows_, b.cols_);
    std::uint64_t const q = ring_.modulus();
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint64_t* out = &m.data_[i * b.cols_];
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint64_t const a = data_[i * cols_ + k];
            if (a == 0) continue;
            std::uint64_t const* brow = &b.data_[k * b.cols_];
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (brow[j]) out[j] = (out[j] + a * brow[j]) % q;
        }
    }
    return m;
}

Matrix Matrix::operator+(Matrix const& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_ || !(ring_ == b.ring_)) throw InputError("matrix sum: shape mismatch");
    Matrix m = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = ring_.add(data_[i], b.data_[i]);
    return m;
}

Matrix Matrix::operator-(Matrix const& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_ || !(ring_ == b.ring_)) throw InputError("matrix difference: shape mismatch");
    Matrix m = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = ring_.sub(data_[i], b.data_[i]);
    return m;
}

namespace {

// Row i -= m * row t over columns [from, cols).
void row_axpy(Matrix& a, std::size_t i, std::size_t t, std::uint64_t m, std::size_t from) {
    auto const& ring = a.ring();
    for (std::size_t j = from; j < a.cols(); ++j) {
        std::uint64_t const v = a(t, j);
        if (v) a.at(i, j) = ring.sub(a(i, j), ring.mul(m, v));
    }
}

// Column j -= m * column t.
void col_axpy(Matrix& a, std::size_t j, std::size_t t, std::uint64_t m) {
    auto const& ring = a.ring();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::uint64_t const v = a(i, t);
        if (v) a.at(i, j) = ring.sub(a(i, j), ring.mul(m, v));
    }
}

void swap_rows(Matrix& a, std::size_t r, std::size_t s) {
    if (r == s) return;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(r, j), a.at(s, j));
}

void swap_cols(Matrix& a, std::size_t c, std::size_t d) {
    if (c == d) return;
    for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a.at(i, c), a.at(i, d));
}

struct Elimination {
    std::vector<unsigned> exponents;
    Matrix u, u_inv, v;
};

Elimination eliminate(Matrix a, bool track) {
    auto const& ring = a.ring();
    std::size_t const r = a.rows(), c = a.cols(), n = std::min(r, c);
    Elimination out{std::vector<unsigned>(n, ring.k()), Matrix::identity(ring, track ? r : 0),
                    Matrix::identity(ring, track ? r : 0), Matrix::identity(ring, track ? c : 0)};
    for (std::size_t t = 0; t < n; ++t) {
        unsigned best = ring.k();
        std::size_t bi = t, bj = t;
        for (std::size_t j = t; j < c && best > 0; ++j) {
            for (std::size_t i = t; i < r; ++i) {
                unsigned const e = ring.valuation(a(i, j));
                if (e < best) {
                    best = e;
                    bi = i;
                    bj = j;
                    if (e == 0) break;
                }
            }
        }
        if (best == ring.k()) break;
        out.exponents[t] = best;

        swap_rows(a, t, bi);
        swap_cols(a, t, bj);
        if (track) {
            swap_rows(out.u, t, bi);
            swap_cols(out.u_inv, t, bi);
            swap_cols(out.v, t, bj);
        }

        std::uint64_t const pe = ring.p_power(best);
        std::uint64_t const unit = a(t, t) / pe;
        std::uint64_t const uinv = ring.inverse(unit);
        for (std::size_t j = t; j < c; ++j) a.at(t, j) = ring.mul(a(t, j), uinv);
        if (track) {
            for (std::size_t j = 0; j < r; ++j) out.u.at(t, j) = ring.mul(out.u(t, j), uinv);
            for (std::size_t i = 0; i < r; ++i) out.u_inv.at(i, t) = ring.mul(out.u_inv(i, t), unit);
        }

        for (std::size_t i = t + 1; i < r; ++i) {
            std::uint64_t const m = a(i, t) / pe;
            if (m == 0) continue;
            row_axpy(a, i, t, m, t);
            if (track) {
                row_axpy(out.u, i, t, m, 0);
                // u_inv column t += m * column i
                for (std::size_t k = 0; k < r; ++k) {
                    std::uint64_t const v = out.u_inv(k, i);
                    if (v) out.u_inv.at(k, t) = ring.add(out.u_inv(k, t), ring.mul(m, v));
                }
            }
        }
        for (std::size_t j = t + 1; j < c; ++j) {
            std::uint64_t const m = a(t, j) / pe;
            if (m == 0) continue;
            a.at(t, j) = 0;
            if (track) col_axpy(out.v, j, t, m);
        }
    }
    return out;
}

std::optional<Vec> solve_with(SmithForm const& s, std::size_t cols, Vec const& b) {
    auto const& ring = s.u.ring();
    Vec const z = s.u.apply(b);
    Vec y(cols, 0);
    for (std::size_t i = 0; i < z.size(); ++i) {
        unsigned const e = i < s.exponents.size() ? s.exponents[i] : ring.k();
        if (ring.valuation(z[i]) < e) return std::nullopt;
        if (e < ring.k()) y[i] = z[i] / ring.p_power(e);
    }
    return s.v.apply(y);
}

}  // namespace

SmithForm smith_form(Matrix const& a) {
    auto e = eliminate(a, true);
    return {std::move(e.exponents), std::move(e.u), std::move(e.u_inv), std::move(e.v)};
}

std::size_t rank_mod_p(Matrix const& a) {
    auto const field = a.ring().with_precision(1);
    auto const e = eliminate(a.reduced(field), false);
    return static_cast<std::size_t>(std::count(e.exponents.begin(), e.exponents.end(), 0u));
}

bool SubquotientBasis::is_free() const {
    return std::all_of(divisibility.begin(), divisibility.end(), [](unsigned d) { return d == 0; });
}

SubquotientBasis column_span(Matrix const& a) {
    auto const s = smith_form(a);
    auto const& ring = a.ring();
    std::vector<Vec> cols;
    std::vector<unsigned> div;
    for (std::size_t i = 0; i < s.exponents.size(); ++i) {
        unsigned const e = s.exponents[i];
        if (e >= ring.k()) continue;
        Vec col = s.u_inv.column(i);
        std::uint64_t const pe = ring.p_power(e);
        for (auto& x : col) x = ring.mul(x, pe);
        cols.push_back(std::move(col));
        div.push_back(e);
    }
    return {Matrix::from_columns(ring, a.rows(), cols), std::move(div)};
}

SubquotientBasis kernel(Matrix const& a) {
    auto const s = smith_form(a);
    auto const& ring = a.ring();
    std::vector<Vec> cols;
    std::vector<unsigned> div;
    for (std::size_t i = 0; i < a.cols(); ++i) {
        unsigned const e = i < s.exponents.size() ? s.exponents[i] : ring.k();
        if (e == 0) continue;
        unsigned const d = ring.k() - e;
        Vec col = s.v.column(i);
        std::uint64_t const pd = ring.p_power(d);
        for (auto& x : col) x = ring.mul(x, pd);
        cols.push_back(std::move(col));
        div.push_back(d);
    }
    return {Matrix::from_columns(ring, a.cols(), cols), std::move(div)};
}

std::optional<Vec> solve(Matrix const& a, Vec const& b) {
    if (b.size() != a.rows()) throw InputError("solve: right-hand side length mismatch");
    return solve_with(smith_form(a), a.cols(), b);
}

bool contains(SubquotientBasis const& span, Vec const& v) { return solve(span.basis, v).has_value(); }

std::optional<Vec> containment_witness(SubquotientBasis const& outer, SubquotientBasis const& inner) {
    if (outer.basis.rows() != inner.basis.rows()) throw InputError("containment: ambient rank mismatch");
    auto const s = smith_form(outer.basis);
    for (std::size_t j = 0; j < inner.basis.cols(); ++j) {
        Vec col = inner.basis.column(j);
        if (!solve_with(s, outer.basis.cols(), col)) return col;
    }
    return std::nullopt;
}

bool same_span(SubquotientBasis const& a, SubquotientBasis const& b) {
    return !containment_witness(a, b) && !containment_witness(b, a);
}

Matrix left_inverse(SubquotientBasis const& free_basis) {
    auto const& b = free_basis.basis;
    auto const s = smith_form(b);
    if (b.cols() > b.rows() ||
        !std::all_of(s.exponents.begin(), s.exponents.end(), [](unsigned e) { return e == 0; }))
        throw PreconditionError("basis is not free (columns dependent mod p)");
    std::vector<std::size_t> first(b.cols());
    for (std::size_t i = 0; i < first.size(); ++i) first[i] = i;
    return s.v * s.u.rows_subset(first);
}

}  // namespace aeq
