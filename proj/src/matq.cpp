#include "weilrep/matq.hpp"

#include <stdexcept>

#include "weilrep/localfield.hpp"

namespace weilrep {

MatQ MatQ::identity(long n) {
    MatQ m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

MatQ MatQ::diagonal(const VecQ& d) {
    MatQ m(d.size(), d.size());
    for (size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
}

MatQ MatQ::operator*(const MatQ& o) const {
    if (c_ != o.r_) throw std::invalid_argument("matrix dimension mismatch");
    MatQ m(r_, o.c_);
    for (long i = 0; i < r_; ++i)
        for (long k = 0; k < c_; ++k) {
            if (at(i, k) == 0) continue;
            for (long j = 0; j < o.c_; ++j) m.at(i, j) += at(i, k) * o.at(k, j);
        }
    return m;
}

VecQ MatQ::operator*(const VecQ& v) const {
    if (c_ != static_cast<long>(v.size())) throw std::invalid_argument("matrix/vector mismatch");
    VecQ r(r_, mpq_class(0));
    for (long i = 0; i < r_; ++i)
        for (long j = 0; j < c_; ++j)
            if (at(i, j) != 0) r[i] += at(i, j) * v[j];
    return r;
}

MatQ MatQ::operator+(const MatQ& o) const {
    MatQ m = *this;
    for (long i = 0; i < r_ * c_; ++i) m.a_[i] += o.a_[i];
    return m;
}

MatQ MatQ::operator-(const MatQ& o) const {
    MatQ m = *this;
    for (long i = 0; i < r_ * c_; ++i) m.a_[i] -= o.a_[i];
    return m;
}

MatQ MatQ::operator-() const {
    MatQ m = *this;
    for (auto& x : m.a_) x = -x;
    return m;
}

MatQ MatQ::scaled(const mpq_class& c) const {
    MatQ m = *this;
    for (auto& x : m.a_) x *= c;
    return m;
}

MatQ MatQ::transpose() const {
    MatQ m(c_, r_);
    for (long i = 0; i < r_; ++i)
        for (long j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
}

MatQ MatQ::inverse() const {
    if (r_ != c_) throw std::invalid_argument("inverse of non-square matrix");
    long n = r_;
    MatQ a = *this, inv = identity(n);
    for (long col = 0; col < n; ++col) {
        long piv = -1;
        for (long i = col; i < n; ++i)
            if (a.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) throw std::invalid_argument("singular matrix");
        if (piv != col)
            for (long j = 0; j < n; ++j) {
                std::swap(a.at(piv, j), a.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        mpq_class d = a.at(col, col);
        for (long j = 0; j < n; ++j) {
            a.at(col, j) /= d;
            inv.at(col, j) /= d;
        }
        for (long i = 0; i < n; ++i) {
            if (i == col || a.at(i, col) == 0) continue;
            mpq_class f = a.at(i, col);
            for (long j = 0; j < n; ++j) {
                a.at(i, j) -= f * a.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

mpq_class MatQ::det() const {
    if (r_ != c_) throw std::invalid_argument("determinant of non-square matrix");
    MatQ a = *this;
    long n = r_;
    mpq_class d(1);
    for (long col = 0; col < n; ++col) {
        long piv = -1;
        for (long i = col; i < n; ++i)
            if (a.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != col) {
            for (long j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
            d = -d;
        }
        d *= a.at(col, col);
        for (long i = col + 1; i < n; ++i) {
            if (a.at(i, col) == 0) continue;
            mpq_class f = a.at(i, col) / a.at(col, col);
            for (long j = col; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
        }
    }
    return d;
}

bool MatQ::is_symmetric() const {
    if (r_ != c_) return false;
    for (long i = 0; i < r_; ++i)
        for (long j = i + 1; j < c_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool MatQ::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

VecQ vec_add(const VecQ& a, const VecQ& b) {
    VecQ r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

VecQ vec_sub(const VecQ& a, const VecQ& b) {
    VecQ r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

VecQ vec_neg(const VecQ& a) {
    VecQ r = a;
    for (auto& x : r) x = -x;
    return r;
}

VecQ vec_scaled(const VecQ& a, const mpq_class& c) {
    VecQ r = a;
    for (auto& x : r) x *= c;
    return r;
}

mpq_class dot(const VecQ& a, const VecQ& b) {
    mpq_class s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

long min_valuation(const MatQ& m, long p) {
    long v = VAL_INF;
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0) v = std::min(v, valuation(m.at(i, j), p));
    return v;
}

bool p_integral(const MatQ& m, long p) {
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0 && valuation(m.at(i, j), p) < 0) return false;
    return true;
}

namespace {

mpq_class p_power(long p, long e) {
    mpq_class r(1), q(p);
    for (long i = 0; i < (e >= 0 ? e : -e); ++i) r *= q;
    if (e < 0) r = 1 / r;
    return r;
}

// canonical representative of r modulo p^a Z_(p): p^a * (fractional p-part
// of r/p^a), i.e. p^a * b/p^k with 0 <= b < p^k
mpq_class frac_canonical(const mpq_class& r, long p, long a) {
    mpq_class rp = r / p_power(p, a);
    long v = valuation(rp, p);
    if (rp == 0 || v >= 0) return 0;
    long k = -v;
    long b = mod_pk(rp * p_power(p, k), p, k);
    return p_power(p, a) * mpq_class(b) / p_power(p, k);
}

} // namespace

MatQ plocal_hnf(const MatQ& m, long p) {
    const long n = m.rows();
    MatQ a = m;
    long cols = a.cols();
    for (long row = 0; row < n; ++row) {
        // pivot: minimal valuation in this row among columns >= row
        long best = -1, bestv = VAL_INF;
        for (long j = row; j < cols; ++j) {
            if (a.at(row, j) == 0) continue;
            long v = valuation(a.at(row, j), p);
            if (v < bestv) { bestv = v; best = j; }
        }
        if (best < 0) throw std::invalid_argument("plocal_hnf: rank deficient input");
        if (best != row)
            for (long i = 0; i < n; ++i) std::swap(a.at(i, best), a.at(i, row));
        // normalize column so pivot is exactly p^bestv
        mpq_class unit = a.at(row, row) / p_power(p, bestv);
        for (long i = 0; i < n; ++i) a.at(i, row) /= unit;
        // clear this row to the right
        for (long j = row + 1; j < cols; ++j) {
            if (a.at(row, j) == 0) continue;
            mpq_class f = a.at(row, j) / a.at(row, row);
            for (long i = 0; i < n; ++i) a.at(i, j) -= f * a.at(i, row);
        }
    }
    // reduce entries left of each pivot into [0, p^{a_i})
    MatQ h(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) h.at(i, j) = a.at(i, j);
    for (long i = 0; i < n; ++i) {
        long ai = valuation(h.at(i, i), p);
        for (long j = 0; j < i; ++j) {
            mpq_class target = frac_canonical(h.at(i, j), p, ai);
            mpq_class f = (h.at(i, j) - target) / h.at(i, i);
            for (long k = 0; k < n; ++k) h.at(k, j) -= f * h.at(k, i);
        }
    }
    return h;
}

SmithResult plocal_smith(const MatQ& a0, long p) {
    const long n = a0.rows(), m = a0.cols();
    MatQ a = a0;
    SmithResult s;
    s.U = MatQ::identity(n);
    s.Uinv = MatQ::identity(n);
    s.V = MatQ::identity(m);
    s.Vinv = MatQ::identity(m);
    const long steps = std::min(n, m);

    auto row_addmul = [&](long dst, long src, const mpq_class& f) {
        // a <- E a with E = (dst += f*src); U <- U E^{-1}, Uinv <- E Uinv
        for (long j = 0; j < m; ++j) a.at(dst, j) += f * a.at(src, j);
        for (long i = 0; i < n; ++i) s.U.at(i, src) -= f * s.U.at(i, dst);
        for (long j = 0; j < n; ++j) s.Uinv.at(dst, j) += f * s.Uinv.at(src, j);
    };
    auto col_addmul = [&](long dst, long src, const mpq_class& f) {
        for (long i = 0; i < n; ++i) a.at(i, dst) += f * a.at(i, src);
        for (long j = 0; j < m; ++j) s.V.at(src, j) -= f * s.V.at(dst, j);
        for (long i = 0; i < m; ++i) s.Vinv.at(i, dst) += f * s.Vinv.at(i, src);
    };
    auto row_swap = [&](long i1, long i2) {
        for (long j = 0; j < m; ++j) std::swap(a.at(i1, j), a.at(i2, j));
        for (long i = 0; i < n; ++i) std::swap(s.U.at(i, i1), s.U.at(i, i2));
        for (long j = 0; j < n; ++j) std::swap(s.Uinv.at(i1, j), s.Uinv.at(i2, j));
    };
    auto col_swap = [&](long j1, long j2) {
        for (long i = 0; i < n; ++i) std::swap(a.at(i, j1), a.at(i, j2));
        for (long j = 0; j < m; ++j) std::swap(s.V.at(j1, j), s.V.at(j2, j));
        for (long i = 0; i < m; ++i) std::swap(s.Vinv.at(i, j1), s.Vinv.at(i, j2));
    };
    auto col_scale = [&](long j, const mpq_class& u) {
        for (long i = 0; i < n; ++i) a.at(i, j) *= u;
        mpq_class ui = 1 / u;
        for (long jj = 0; jj < m; ++jj) s.V.at(j, jj) *= ui;
        for (long i = 0; i < m; ++i) s.Vinv.at(i, j) *= u;
    };

    for (long k = 0; k < steps; ++k) {
        // find minimal-valuation pivot in the trailing block
        long bi = -1, bj = -1, bv = VAL_INF;
        for (long i = k; i < n; ++i)
            for (long j = k; j < m; ++j) {
                if (a.at(i, j) == 0) continue;
                long v = valuation(a.at(i, j), p);
                if (v < bv) { bv = v; bi = i; bj = j; }
            }
        if (bi < 0) {
            for (long i = k; i < steps; ++i) s.exponents.push_back(VAL_INF);
            return s;
        }
        if (bi != k) row_swap(bi, k);
        if (bj != k) col_swap(bj, k);
        // normalize pivot to p^bv
        col_scale(k, p_power(p, bv) / a.at(k, k));
        for (long i = k + 1; i < n; ++i)
            if (a.at(i, k) != 0) row_addmul(i, k, -a.at(i, k) / a.at(k, k));
        for (long j = k + 1; j < m; ++j)
            if (a.at(k, j) != 0) col_addmul(j, k, -a.at(k, j) / a.at(k, k));
        s.exponents.push_back(bv);
    }
    return s;
}

} // namespace weilrep
