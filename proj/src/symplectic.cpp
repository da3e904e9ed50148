#include "weilrep/symplectic.hpp"

#include <stdexcept>

namespace weilrep {

QuadForm QuadForm::zero(long m) { return QuadForm{MatQ(m, m)}; }

QuadForm QuadForm::diagonal(const VecQ& entries) { return QuadForm{MatQ::diagonal(entries)}; }

QuadForm QuadForm::from_gram(const MatQ& s) {
    if (!s.is_symmetric()) throw std::invalid_argument("gram matrix must be symmetric");
    return QuadForm{s};
}

QuadForm QuadForm::from_rho(const MatQ& rho) {
    if (!rho.is_symmetric()) throw std::invalid_argument("rho must be symmetric");
    return QuadForm{rho.scaled(mpq_class(1, 2))};
}

mpq_class QuadForm::eval(const VecQ& x) const { return dot(x, gram * x); }

QuadForm QuadForm::pullback(const MatQ& alpha) const {
    return QuadForm{alpha.transpose() * gram * alpha};
}

QuadForm QuadForm::direct_sum(const QuadForm& o) const {
    long a = dim(), b = o.dim();
    MatQ s(a + b, a + b);
    for (long i = 0; i < a; ++i)
        for (long j = 0; j < a; ++j) s.at(i, j) = gram.at(i, j);
    for (long i = 0; i < b; ++i)
        for (long j = 0; j < b; ++j) s.at(a + i, a + j) = o.gram.at(i, j);
    return QuadForm{s};
}

SymplecticMatrix SymplecticMatrix::identity(long n) {
    return {n, MatQ::identity(n), MatQ(n, n), MatQ(n, n), MatQ::identity(n)};
}

MatQ SymplecticMatrix::full() const {
    MatQ m(2 * n, 2 * n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            m.at(i, j) = alpha.at(i, j);
            m.at(i, n + j) = beta.at(i, j);
            m.at(n + i, j) = gamma.at(i, j);
            m.at(n + i, n + j) = delta.at(i, j);
        }
    return m;
}

SymplecticMatrix SymplecticMatrix::from_full(const MatQ& m) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0)
        throw std::invalid_argument("expected a 2n x 2n matrix");
    long n = m.rows() / 2;
    SymplecticMatrix s{n, MatQ(n, n), MatQ(n, n), MatQ(n, n), MatQ(n, n)};
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            s.alpha.at(i, j) = m.at(i, j);
            s.beta.at(i, j) = m.at(i, n + j);
            s.gamma.at(i, j) = m.at(n + i, j);
            s.delta.at(i, j) = m.at(n + i, n + j);
        }
    return s;
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& o) const {
    return {n, alpha * o.alpha + beta * o.gamma, alpha * o.beta + beta * o.delta,
            gamma * o.alpha + delta * o.gamma, gamma * o.beta + delta * o.delta};
}

SymplecticMatrix SymplecticMatrix::inverse() const {
    // sigma^I = (delta^T, -beta^T; -gamma^T, alpha^T) inverts symplectic sigma
    return {n, delta.transpose(), -beta.transpose(), -gamma.transpose(), alpha.transpose()};
}

VecQ SymplecticMatrix::apply(const VecQ& w) const {
    VecQ x(w.begin(), w.begin() + n), xs(w.begin() + n, w.end());
    VecQ top = vec_add(alpha * x, beta * xs);
    VecQ bot = vec_add(gamma * x, delta * xs);
    top.insert(top.end(), bot.begin(), bot.end());
    return top;
}

bool is_symplectic(const SymplecticMatrix& s) {
    SymplecticMatrix prod = s.inverse() * s;
    return prod == SymplecticMatrix::identity(s.n);
}

bool in_omega(const SymplecticMatrix& s) { return is_symplectic(s) && s.beta.det() != 0; }

SymplecticMatrix gen_d(const MatQ& alpha) {
    long n = alpha.rows();
    if (alpha.det() == 0) throw std::invalid_argument("gen_d: alpha must be invertible");
    return {n, alpha, MatQ(n, n), MatQ(n, n), alpha.transpose().inverse()};
}

SymplecticMatrix gen_dprime(const MatQ& beta) {
    long n = beta.rows();
    if (beta.det() == 0) throw std::invalid_argument("gen_dprime: beta must be invertible");
    return {n, MatQ(n, n), beta, -beta.transpose().inverse(), MatQ(n, n)};
}

SymplecticMatrix gen_t(const QuadForm& f) {
    long n = f.dim();
    return {n, MatQ::identity(n), MatQ(n, n), -f.rho(), MatQ::identity(n)};
}

SymplecticMatrix gen_tprime(const QuadForm& fp) {
    long n = fp.dim();
    return {n, MatQ::identity(n), -fp.rho(), MatQ(n, n), MatQ::identity(n)};
}

OmegaDecomposition omega_decompose(const SymplecticMatrix& s) {
    if (!in_omega(s)) throw std::invalid_argument("matrix is not in Omega(W)");
    MatQ binv = s.beta.inverse();
    OmegaDecomposition d{QuadForm::from_rho(-(s.delta * binv)), QuadForm::from_rho(-(binv * s.alpha)),
                         s.beta};
    return d;
}

mpq_class sympl_B(const VecQ& w1, const VecQ& w2) {
    long n = static_cast<long>(w1.size()) / 2;
    mpq_class r(0);
    for (long i = 0; i < n; ++i) r += w1[i] * w2[n + i];
    return r;
}

mpq_class f_sigma(const SymplecticMatrix& s, const VecQ& w) {
    VecQ sw = s.apply(w);
    return (sympl_B(sw, sw) - sympl_B(w, w)) / 2;
}

} // namespace weilrep
