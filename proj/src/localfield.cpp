#include "weilrep/localfield.hpp"

#include <stdexcept>

namespace weilrep {

long valuation(const mpq_class& x, long p) {
    if (x == 0) return VAL_INF;
    long v = 0;
    mpz_class n = x.get_num();
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        n /= p;
        ++v;
    }
    mpz_class d = x.get_den();
    while (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
        d /= p;
        --v;
    }
    return v;
}

long mod_pk(const mpq_class& x0, long p, long k) {
    if (k <= 0) return 0;
    mpq_class x = x0;
    x.canonicalize();
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
    mpz_class den = x.get_den() % pk;
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), pk.get_mpz_t()) == 0)
        throw std::invalid_argument("mod_pk: rational is not p-integral");
    mpz_class r = (x.get_num() % pk) * dinv % pk;
    if (r < 0) r += pk;
    return r.get_si();
}

int legendre(const mpq_class& u, long p) {
    if (valuation(u, p) != 0) throw std::invalid_argument("legendre: not a unit");
    long a = mod_pk(u, p, 1);
    long r = 1, base = a % p, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = (r * base) % p;
        base = (base * base) % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

bool is_square_qp(const mpq_class& x, long p) {
    if (x == 0) return true;
    long v = valuation(x, p);
    if (v % 2 != 0) return false;
    mpq_class u = x;
    mpq_class pq(p);
    for (long i = 0; i < v; ++i) u /= pq;
    for (long i = 0; i < -v; ++i) u *= pq;
    return legendre(u, p) == 1;
}

mpq_class parse_rational(const std::string& s) {
    mpq_class r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    return r;
}

std::string rational_str(const mpq_class& x) { return x.get_str(); }

Character Character::with_conductor(long p, long l) {
    Character c;
    c.p = p;
    c.conductor = l;
    mpq_class pw(1);
    for (long i = 0; i < (l >= 0 ? l : -l); ++i) pw *= p;
    c.scale = (l >= 0) ? mpq_class(1) / pw : pw;
    return c;
}

CoeffElem char_eval(const Character& chi, const mpq_class& x, const CoeffRing& R) {
    mpq_class y = chi.scale * x;
    long v = valuation(y, chi.p);
    if (v >= 0 || y == 0) return R.one();
    long k = -v;
    long pk = 1;
    for (long i = 0; i < k; ++i) pk *= chi.p;
    // y = a/p^k + integral, a = num * den^{-1} mod p^k with the p-part of
    // the denominator scaled away
    mpq_class scaled = y;
    mpq_class ppow(pk);
    scaled *= ppow; // now p-integral
    long a = mod_pk(scaled, chi.p, k);
    CoeffElem zeta = R.root_of_unity(pk);
    return R.pow(zeta, a);
}

CoeffElem module_of(const mpq_class& x, long p, const CoeffRing& R) {
    if (x == 0) throw std::invalid_argument("module of zero");
    return R.q_power(-valuation(x, p));
}

long module_exponent(long vdet, long n, long conductor, MapSide side) {
    switch (side) {
        case MapSide::same: return -vdet;
        case MapSide::dual_to_primal: return -vdet - n * conductor;
        case MapSide::primal_to_dual: return -vdet + n * conductor;
    }
    return 0;
}

} // namespace weilrep
