// Sp(W) for W = X x X* = F^n x F^n as exact block matrices, the generator
// maps d, d', t, t', membership and decomposition over the big cell
// Omega(W) (invertible upper-right block), and the quadratic form f_sigma.

#pragma once

#include "weilrep/localfield.hpp"
#include "weilrep/matq.hpp"

namespace weilrep {

// f(x) = x^T S x with S symmetric; the associated symmetric homomorphism
// rho sends x to 2 S x.
struct QuadForm {
    MatQ gram;

    long dim() const { return gram.rows(); }
    static QuadForm zero(long m);
    static QuadForm diagonal(const VecQ& entries);
    static QuadForm from_gram(const MatQ& s);
    static QuadForm from_rho(const MatQ& rho); // f(x) = [x, rho(x)/2]

    mpq_class eval(const VecQ& x) const;
    MatQ rho() const { return gram.scaled(2); }
    bool nondegenerate() const { return gram.det() != 0; }
    QuadForm negated() const { return from_gram(-gram); }
    QuadForm pullback(const MatQ& alpha) const; // f o alpha
    QuadForm direct_sum(const QuadForm& other) const;
    bool operator==(const QuadForm&) const = default;
};

struct SymplecticMatrix {
    long n = 0;
    MatQ alpha, beta, gamma, delta;

    static SymplecticMatrix identity(long n);
    MatQ full() const; // 2n x 2n
    static SymplecticMatrix from_full(const MatQ& m);
    SymplecticMatrix operator*(const SymplecticMatrix& o) const;
    SymplecticMatrix inverse() const; // sigma^I for symplectic sigma
    VecQ apply(const VecQ& w) const;  // w = (x, x*) of size 2n
    bool operator==(const SymplecticMatrix&) const = default;
};

bool is_symplectic(const SymplecticMatrix& s);
bool in_omega(const SymplecticMatrix& s);

SymplecticMatrix gen_d(const MatQ& alpha);       // diag(alpha, alpha^{-T})
SymplecticMatrix gen_dprime(const MatQ& beta);   // (0, beta; -beta^{-T}, 0)
SymplecticMatrix gen_t(const QuadForm& f);       // (1, 0; -rho, 1)
SymplecticMatrix gen_tprime(const QuadForm& fp); // (1, -rho'; 0, 1)

struct OmegaDecomposition {
    QuadForm f1, f2;
    MatQ beta;
};
// sigma = t(f1) d'(beta) t(f2); rho(f1) = -delta beta^{-1}, rho(f2) = -beta^{-1} alpha
OmegaDecomposition omega_decompose(const SymplecticMatrix& s);

// f_sigma(w) = (B(sigma w, sigma w) - B(w, w)) / 2 with B((x1,x1*),(x2,x2*)) = [x1,x2*]
mpq_class f_sigma(const SymplecticMatrix& s, const VecQ& w);

// B(w1, w2)
mpq_class sympl_B(const VecQ& w1, const VecQ& w2);

} // namespace weilrep
