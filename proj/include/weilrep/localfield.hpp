// The base field F = Q_p on exact rational representatives: p-adic
// valuation, module |x| = q^{-v(x)}, and the smooth additive character
// chi_c(x) = chi_0(c x) where chi_0 is trivial exactly on O_F.

#pragma once

#include <gmpxx.h>

#include <limits>
#include <string>

#include "weilrep/coeff.hpp"

namespace weilrep {

inline constexpr long VAL_INF = std::numeric_limits<long>::max() / 4;

// v_p of an exact rational; VAL_INF for zero.
long valuation(const mpq_class& x, long p);

// canonical integer representative in [0, p^k) of a p-integral rational
// modulo p^k Z_(p)
long mod_pk(const mpq_class& x, long p, long k);

// Legendre symbol of a p-adic unit (rational with v_p = 0), values +-1.
int legendre(const mpq_class& u, long p);

// whether x is a square in Q_p^x (p odd)
bool is_square_qp(const mpq_class& x, long p);

mpq_class parse_rational(const std::string& s);
std::string rational_str(const mpq_class& x);

struct Character {
    long p = 3;
    mpq_class scale = 1; // c; chi(x) = chi_0(c x)
    long conductor = 0;  // l = -v_p(c)

    static Character with_conductor(long p, long l);
};

// chi(x) as an element of R: write c*x = a/p^k + (p-integral part) and
// return zeta_{p^k}^a (1 when k <= 0).
CoeffElem char_eval(const Character& chi, const mpq_class& x, const CoeffRing& R);

// |x| = q^{-v(x)} in R; x must be nonzero.
CoeffElem module_of(const mpq_class& x, long p, const CoeffRing& R);

// Direction of a linear map for measure bookkeeping.  With vol(O^n)=1 on
// the primal side and the dual measure normalized by vol(p^l O^n)=1, the
// module of a map with determinant valuation vdet is q^{-vdet} between
// like sides, q^{-vdet - n l} from dual to primal, and q^{-vdet + n l}
// from primal to dual.
enum class MapSide { same, dual_to_primal, primal_to_dual };

long module_exponent(long vdet, long n, long conductor, MapSide side);

} // namespace weilrep
