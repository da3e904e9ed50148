// Lattices in F^n, R-valued Haar measure and Schwartz functions as finite
// coset tables, with exact Fourier transform, inverse, convolution and
// integration.
//
// A SchwartzFunction is sum_h table[h] * 1_{h+inner} with inner <= outer
// and h running over canonical coset representatives of outer/inner.
// Every operation returns a canonical form: the outer lattice is generated
// by the support together with the inner lattice, the inner lattice is the
// maximal period lattice, zero cosets are dropped, and representatives are
// the mixed-radix coordinates of the Smith decomposition of
// outer^{-1}*inner.  Equality of functions is therefore structural.

#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "weilrep/coeff.hpp"
#include "weilrep/localfield.hpp"
#include "weilrep/matq.hpp"

namespace weilrep {

struct blowup_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Lattice {
  public:
    Lattice() = default;
    static Lattice standard(long n, long p); // O^n
    static Lattice from_basis(const MatQ& m, long p);
    // Z_(p)-span of the columns (must have full row rank)
    static Lattice generated(const MatQ& cols, long p);

    long dim() const { return basis_.rows(); }
    long p() const { return p_; }
    const MatQ& basis() const { return basis_; }
    const MatQ& basis_inv() const { return inv_; }

    bool contains(const VecQ& x) const;
    bool contains_lattice(const Lattice& o) const;
    Lattice sum(const Lattice& o) const;
    Lattice intersect(const Lattice& o) const;
    Lattice scaled(long k) const;          // p^k L
    Lattice transformed(const MatQ& a) const; // A L
    Lattice dual(long conductor) const;    // p^l (M^T)^{-1} O^n
    Lattice with_vector(const VecQ& v) const; // span(L, v)
    long det_valuation() const;
    bool operator==(const Lattice& o) const { return basis_ == o.basis_; }

  private:
    MatQ basis_, inv_;
    long p_ = 0;
};

// {x in L : C x in p^l O^k}
Lattice sublattice_with_image_in(const Lattice& L, const MatQ& C, long l);

struct SchwartzContext {
    const CoeffRing* ring = nullptr;
    Character chi;
    long table_cap = 1000000;

    long p() const { return chi.p; }
    long conductor() const { return chi.conductor; }
    const CoeffRing& R() const { return *ring; }
};

enum class Side { primal, dual };

// vol(L) with vol(O^n) = 1 on the primal side and vol(p^l O^n) = 1 on the
// dual side (the dual measure of Prop. on Fourier inversion).
CoeffElem volume(const Lattice& L, Side side, const SchwartzContext& ctx);
long volume_exponent(const Lattice& L, Side side, long conductor);

// mixed-radix coordinate system for outer/inner
struct CosetCoords {
    MatQ rep_basis;  // rep(key) = rep_basis * key
    MatQ coord_mat;  // key_of(x) from coord_mat * x, reduced mod radix
    std::vector<long> exponents;
    std::vector<long> radix; // p^{e_i}
    long index = 1;
};
CosetCoords coset_coords(const Lattice& outer, const Lattice& inner, long table_cap);

class SchwartzFunction {
  public:
    using Table = std::map<std::vector<long>, CoeffElem>;

    long dim() const { return outer_.dim(); }
    const Lattice& outer() const { return outer_; }
    const Lattice& inner() const { return inner_; }
    const Table& table() const { return table_; }
    bool is_zero() const { return table_.empty(); }

    VecQ rep_of(const std::vector<long>& key) const;
    std::vector<long> key_of(const VecQ& x) const;

    friend class SchwartzBuilder;

  private:
    Lattice outer_, inner_;
    CosetCoords coords_;
    Table table_;
};

// ---- construction ----
SchwartzFunction sf_zero(long n, const SchwartzContext& ctx);
SchwartzFunction indicator(const Lattice& L, const SchwartzContext& ctx);
SchwartzFunction indicator_coset(const VecQ& h, const Lattice& L, const SchwartzContext& ctx);
// general: values(h) gives the coefficient on h + inner
SchwartzFunction sf_from_cosets(const Lattice& outer, const Lattice& inner,
                                const std::vector<std::pair<VecQ, CoeffElem>>& cosets,
                                const SchwartzContext& ctx);

// ---- queries ----
CoeffElem evaluate(const SchwartzFunction& f, const VecQ& x, const SchwartzContext& ctx);
bool sf_equal(const SchwartzFunction& f, const SchwartzFunction& g, const SchwartzContext& ctx);

// ---- pointwise / affine operations ----
SchwartzFunction sf_add(const SchwartzFunction& f, const SchwartzFunction& g, const SchwartzContext& ctx);
SchwartzFunction sf_mul(const SchwartzFunction& f, const SchwartzFunction& g, const SchwartzContext& ctx);
SchwartzFunction sf_scale(const CoeffElem& c, const SchwartzFunction& f, const SchwartzContext& ctx);
// x -> f(x + v)
SchwartzFunction sf_translate(const VecQ& v, const SchwartzFunction& f, const SchwartzContext& ctx);
// x -> <x, vstar> f(x)
SchwartzFunction sf_modulate(const VecQ& vstar, const SchwartzFunction& f, const SchwartzContext& ctx);
// x -> f(A^{-1} x) (no module factor)
SchwartzFunction sf_compose_inv(const MatQ& a, const SchwartzFunction& f, const SchwartzContext& ctx);

// ---- integration theory ----
CoeffElem integrate(const SchwartzFunction& f, const SchwartzContext& ctx, Side side = Side::primal);
SchwartzFunction fourier(const SchwartzFunction& f, const SchwartzContext& ctx);
SchwartzFunction fourier_inverse(const SchwartzFunction& f, const SchwartzContext& ctx);
SchwartzFunction convolve(const SchwartzFunction& f, const SchwartzFunction& g,
                          const SchwartzContext& ctx, Side side = Side::dual);

// coset representatives of L1/L2 (spec op; index must fit the cap)
std::vector<VecQ> coset_reps(const Lattice& L1, const Lattice& L2, long table_cap = 1000000);

} // namespace weilrep
