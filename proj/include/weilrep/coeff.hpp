// Coefficient ring R for the Weil representation machinery.
//
// Two realizations behind one handle:
//  * cyclotomic: Q(zeta_{4 p^m}) with elements stored as exact rational
//    coefficient vectors reduced modulo the 4p^m-th cyclotomic polynomial.
//    The level m grows lazily per element; binary operations coerce to the
//    larger level, which is a ring embedding zeta_{4p^m} -> zeta_{4p^m'}^{p^{m'-m}}.
//  * finite-field: GF(ell^d) realized as F_ell[x]/(g) where g is the
//    lexicographically first irreducible factor of the cyclotomic polynomial
//    Phi_s mod ell, s = 4*p^m (odd ell) or p^m (ell = 2), and m is the
//    root-order budget carried by the descriptor. x mod g is a primitive
//    s-th root of unity, so all root extractions are deterministic powers.
//
// Both realizations expose p^k-th roots of unity, a pinned square root of
// q = p built from the quadratic Gauss sum, and exact equality.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace weilrep {

struct insufficient_extension_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RingKind { cyclotomic, finite_field };

struct CoeffRingDescriptor {
    RingKind kind = RingKind::cyclotomic;
    long prime_p = 3;
    long ell = 2;              // finite-field kind only
    long extension_degree = 3; // finite-field kind: p-power root budget m
};

// Element of R.  For the cyclotomic kind `level` is the exponent m and
// `qc` has size phi(4 p^m).  For the finite-field kind `ffc` has the
// degree of the modulus and `level` is unused (0).
struct CoeffElem {
    int level = 0;
    std::vector<mpq_class> qc;
    std::vector<long> ffc;
};

class CoeffRing {
  public:
    static CoeffRing create(const CoeffRingDescriptor& d);

    const CoeffRingDescriptor& descriptor() const { return desc_; }
    long p() const { return desc_.prime_p; }
    // 0 for the cyclotomic realization, ell for the finite-field one.
    long characteristic() const;
    // Degree of the finite field over its prime field.
    long field_degree() const { return static_cast<long>(modulus_.size()) - 1; }

    CoeffElem zero() const;
    CoeffElem one() const;
    CoeffElem from_integer(long v) const;
    CoeffElem from_mpz(const mpz_class& v) const;
    // Denominator must be invertible in R (any rational for cyclotomic,
    // prime-to-ell for the finite-field realization).
    CoeffElem from_rational(const mpq_class& v) const;

    CoeffElem add(const CoeffElem& a, const CoeffElem& b) const;
    CoeffElem sub(const CoeffElem& a, const CoeffElem& b) const;
    CoeffElem mul(const CoeffElem& a, const CoeffElem& b) const;
    CoeffElem neg(const CoeffElem& a) const;
    CoeffElem inv(const CoeffElem& a) const; // a must be a unit
    CoeffElem pow(const CoeffElem& a, long e) const;

    bool eq(const CoeffElem& a, const CoeffElem& b) const;
    bool is_zero(const CoeffElem& a) const;
    bool is_one(const CoeffElem& a) const;

    // Element of exact multiplicative order `order`.  Realizable orders
    // divide 4 p^m (cyclotomic, any m) or the s above (finite field).
    CoeffElem root_of_unity(long order) const;
    // Gauss-sum square root of q = p: tau = sum_i (i|p) zeta_p^i with
    // tau^2 = (-1|p) p; returns tau for p = 1 mod 4 and -i*tau otherwise
    // (plain tau in characteristic 2, where -p = p).
    CoeffElem sqrt_q() const;
    // (q^{1/2})^halfexp; halfexp may be negative.
    CoeffElem q_power_half(long halfexp) const;
    // q^e
    CoeffElem q_power(long e) const;

    // Multiplicative order if it divides 4 p^{level budget}; -1 otherwise.
    long order_of(const CoeffElem& a) const;

    std::string to_string(const CoeffElem& a) const;

  private:
    CoeffRingDescriptor desc_;
    // finite-field kind
    std::vector<long> modulus_; // monic, coefficients mod ell, constant first
    long root_order_ = 0;       // s: multiplicative order of x mod modulus_

    // cyclotomic helpers
    long cyc_len(int level) const;   // phi(4 p^level)
    long cyc_block(int level) const; // 2 p^{level-1}
    void reduce_mod_phi(std::vector<mpq_class>& v, int level) const;
    CoeffElem cyc_coerce(const CoeffElem& a, int level) const;
    int level_for_order(long order) const;

    // finite-field helpers
    std::vector<long> ff_mul(const std::vector<long>& a, const std::vector<long>& b) const;
    std::vector<long> ff_pow(std::vector<long> a, mpz_class e) const;
    std::vector<long> ff_inv(const std::vector<long>& a) const;
    void build_ff_modulus();
};

} // namespace weilrep
