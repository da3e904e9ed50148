#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "weilrep/schwartz.hpp"

using namespace weilrep;

namespace {

struct World {
    CoeffRing R;
    SchwartzContext ctx;
    World(long p, long l) : R(CoeffRing::create({RingKind::cyclotomic, p})) {
        ctx.ring = &R;
        ctx.chi = Character::with_conductor(p, l);
        ctx.table_cap = 200000;
    }
};

MatQ mat2(long a, long b, long c, long d, long den = 1) {
    MatQ m(2, 2);
    m.at(0, 0) = mpq_class(a, den);
    m.at(0, 1) = mpq_class(b, den);
    m.at(1, 0) = mpq_class(c, den);
    m.at(1, 1) = mpq_class(d, den);
    return m;
}

Lattice random_lattice(std::mt19937_64& rng, long n, long p) {
    while (true) {
        MatQ m(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                long num = (long)(rng() % 7) - 3;
                long scale = (long)(rng() % 3); // p-power twist
                mpq_class e(num);
                for (long s = 0; s < scale; ++s) e /= p;
                m.at(i, j) = e;
            }
        if (m.det() != 0) return Lattice::from_basis(m, p);
    }
}

SchwartzFunction random_sf(std::mt19937_64& rng, World& w, long n, long spread = 1) {
    long p = w.ctx.p();
    Lattice outer = Lattice::standard(n, p).scaled(-spread);
    Lattice inner = Lattice::standard(n, p).scaled(spread);
    auto reps = coset_reps(outer, inner);
    std::vector<std::pair<VecQ, CoeffElem>> cosets;
    for (const auto& h : reps) {
        long pick = rng() % 4;
        if (pick == 0) continue;
        long num = (long)(rng() % 9) - 4;
        if (num == 0) continue;
        CoeffElem c = w.R.from_integer(num);
        if (pick == 2) c = w.R.mul(c, w.R.root_of_unity(p));
        cosets.emplace_back(h, c);
    }
    return sf_from_cosets(outer, inner, cosets, w.ctx);
}

} // namespace

TEST_CASE("coset reps: counts and brute-force agreement") {
    long p = 3;
    Lattice O1 = Lattice::standard(1, p);
    CHECK(coset_reps(O1, O1).size() == 1);
    CHECK(coset_reps(O1, O1.scaled(1)).size() == 3);

    // n=2: [I : diag(3,9)] = 27, matches brute-force enumeration of
    // (Z/3) x (Z/9) through integer vectors
    Lattice O2 = Lattice::standard(2, p);
    MatQ d = mat2(3, 0, 0, 9);
    Lattice L2 = Lattice::from_basis(d, p);
    auto reps = coset_reps(O2, L2);
    CHECK(reps.size() == 27);
    std::set<std::pair<long, long>> seen;
    for (const auto& r : reps) {
        // distinct mod L2 iff (x mod 3, y mod 9) distinct
        long a = mod_pk(r[0], 3, 1), b = mod_pk(r[1], 3, 2);
        seen.emplace(a, b);
    }
    CHECK(seen.size() == 27);
}

TEST_CASE("dual lattice formula and biduality") {
    long p = 3;
    World w(p, 0);
    Lattice O = Lattice::standard(1, p);
    CHECK(O.dual(0) == O);
    // l=2, L=3O: dual = p^(l-1) O = 3O
    Lattice L = O.scaled(1);
    CHECK(L.dual(2) == O.scaled(1));
    std::mt19937_64 rng(11);
    for (int i = 0; i < 30; ++i) {
        long n = 1 + (i % 2);
        Lattice M = random_lattice(rng, n, p);
        for (long l : {-1L, 0L, 1L, 2L}) {
            CHECK(M.dual(l).dual(l) == M);
            // pairing check: [k, k*] lands in p^l O for k in M, k* in M_*
            Lattice D = M.dual(l);
            VecQ k = M.basis() * VecQ(n, mpq_class(1));
            VecQ ks = D.basis() * VecQ(n, mpq_class(1));
            CHECK(valuation(dot(k, ks), p) >= l);
        }
    }
}

TEST_CASE("volumes: normalization and duality product") {
    long p = 3;
    World w(p, 0);
    Lattice O = Lattice::standard(2, p);
    CHECK(w.R.is_one(volume(O, Side::primal, w.ctx)));
    CHECK(w.R.eq(volume(O.scaled(1), Side::primal, w.ctx), w.R.from_rational(mpq_class(1, 9))));
    std::mt19937_64 rng(13);
    for (int i = 0; i < 25; ++i) {
        long n = 1 + (i % 2);
        Lattice M = random_lattice(rng, n, p);
        for (long l : {-1L, 0L, 1L, 2L}) {
            World wl(p, l);
            CoeffElem a = volume(M, Side::primal, wl.ctx);
            CoeffElem b = volume(M.dual(l), Side::dual, wl.ctx);
            CHECK(wl.R.is_one(wl.R.mul(a, b)));
        }
    }
}

TEST_CASE("indicator fourier: F 1_O = 1_{p^l O}") {
    for (long l : {0L, 1L}) {
        World w(3, l);
        Lattice O = Lattice::standard(1, 3);
        SchwartzFunction f = indicator(O, w.ctx);
        SchwartzFunction F = fourier(f, w.ctx);
        CHECK(sf_equal(F, indicator(O.scaled(l), w.ctx), w.ctx));
    }
}

TEST_CASE("fourier of a shifted coset matches the indicator rule") {
    World w(3, 0);
    Lattice O = Lattice::standard(1, 3);
    Lattice L = O.scaled(1); // 3O
    VecQ h{mpq_class(1)};
    SchwartzFunction f = indicator_coset(h, L, w.ctx);
    SchwartzFunction F = fourier(f, w.ctx);
    // expected: vol(3O) <1, g*> on (3O)_* = (1/3)O, table over (1/3)O / O
    Lattice Ostar = L.dual(0);
    CHECK(F.outer() == Ostar);
    CHECK(F.inner() == O);
    for (long j = 0; j < 3; ++j) {
        VecQ g{mpq_class(j, 3)};
        CoeffElem expect = w.R.mul(w.R.from_rational(mpq_class(1, 3)),
                                   char_eval(w.ctx.chi, mpq_class(j, 3), w.R));
        CHECK(w.R.eq(evaluate(F, g, w.ctx), expect));
    }
}

TEST_CASE("fourier inversion on random functions") {
    std::mt19937_64 rng(17);
    for (long p : {3L, 5L}) {
        for (long l : {0L, 1L}) {
            World w(p, l);
            for (int i = 0; i < 6; ++i) {
                SchwartzFunction f = random_sf(rng, w, 1);
                CHECK(sf_equal(fourier_inverse(fourier(f, w.ctx), w.ctx), f, w.ctx));
            }
        }
    }
    // n = 2
    World w(3, 0);
    for (int i = 0; i < 4; ++i) {
        SchwartzFunction f = random_sf(rng, w, 2);
        CHECK(sf_equal(fourier_inverse(fourier(f, w.ctx), w.ctx), f, w.ctx));
    }
}

TEST_CASE("fourier is linear") {
    std::mt19937_64 rng(19);
    World w(3, 0);
    for (int i = 0; i < 6; ++i) {
        SchwartzFunction f = random_sf(rng, w, 1), g = random_sf(rng, w, 1);
        CoeffElem a = w.R.from_integer(2), b = w.R.root_of_unity(3);
        SchwartzFunction lhs = fourier(sf_add(sf_scale(a, f, w.ctx), sf_scale(b, g, w.ctx), w.ctx), w.ctx);
        SchwartzFunction rhs = sf_add(sf_scale(a, fourier(f, w.ctx), w.ctx),
                                      sf_scale(b, fourier(g, w.ctx), w.ctx), w.ctx);
        CHECK(sf_equal(lhs, rhs, w.ctx));
    }
}

TEST_CASE("FPhi(0) = integral of Phi") {
    std::mt19937_64 rng(23);
    World w(5, 1);
    for (int i = 0; i < 6; ++i) {
        SchwartzFunction f = random_sf(rng, w, 1);
        CoeffElem at0 = evaluate(fourier(f, w.ctx), VecQ{mpq_class(0)}, w.ctx);
        CHECK(w.R.eq(at0, integrate(f, w.ctx)));
    }
}

TEST_CASE("integration: translation invariance and cancellation") {
    World w(3, 0);
    Lattice O = Lattice::standard(1, 3);
    CHECK(w.R.is_one(integrate(indicator(O, w.ctx), w.ctx)));
    // c 1_{h+L}: integral c vol(L)
    SchwartzFunction f = sf_scale(w.R.from_integer(5),
                                  indicator_coset(VecQ{mpq_class(1, 3)}, O.scaled(2), w.ctx), w.ctx);
    CHECK(w.R.eq(integrate(f, w.ctx), w.R.from_rational(mpq_class(5, 9))));
    // mixed signs cancel
    std::vector<std::pair<VecQ, CoeffElem>> cosets;
    cosets.emplace_back(VecQ{mpq_class(0)}, w.R.from_integer(2));
    cosets.emplace_back(VecQ{mpq_class(1)}, w.R.from_integer(-1));
    cosets.emplace_back(VecQ{mpq_class(2)}, w.R.from_integer(-1));
    SchwartzFunction g = sf_from_cosets(O, O.scaled(1), cosets, w.ctx);
    CHECK(w.R.is_zero(integrate(g, w.ctx)));
}

TEST_CASE("convolution: identities and the convolution theorem") {
    World w(3, 0);
    Lattice O = Lattice::standard(1, 3);
    SchwartzFunction one_O = indicator(O, w.ctx);
    // 1_O * 1_O = 1_O on the dual side at l=0 (vol_dual(O)=1)
    CHECK(sf_equal(convolve(one_O, one_O, w.ctx), one_O, w.ctx));

    std::mt19937_64 rng(29);
    for (int i = 0; i < 5; ++i) {
        SchwartzFunction F1 = fourier(random_sf(rng, w, 1), w.ctx);
        SchwartzFunction F2 = fourier(random_sf(rng, w, 1), w.ctx);
        SchwartzFunction lhs = fourier_inverse(convolve(F1, F2, w.ctx), w.ctx);
        SchwartzFunction rhs = sf_mul(fourier_inverse(F1, w.ctx), fourier_inverse(F2, w.ctx), w.ctx);
        CHECK(sf_equal(lhs, rhs, w.ctx));
    }

    // smoothing: Psi * (1_L / vol(L)) = Psi when Psi has inner lattice L
    World w2(3, 1);
    SchwartzFunction Psi = fourier(random_sf(rng, w2, 1), w2.ctx);
    Lattice L = Psi.inner();
    SchwartzFunction smoother =
        sf_scale(w2.R.inv(volume(L, Side::dual, w2.ctx)), indicator(L, w2.ctx), w2.ctx);
    CHECK(sf_equal(convolve(Psi, smoother, w2.ctx), Psi, w2.ctx));
}

TEST_CASE("pointwise ops and translation/modulation") {
    World w(3, 0);
    std::mt19937_64 rng(31);
    SchwartzFunction f = random_sf(rng, w, 1);
    CHECK(sf_equal(sf_mul(f, indicator(f.outer(), w.ctx), w.ctx), f, w.ctx));
    // translate(v, 1_{h+L}) = 1_{h-v+L}
    Lattice L = Lattice::standard(1, 3).scaled(1);
    VecQ h{mpq_class(1, 3)}, v{mpq_class(2, 3)};
    SchwartzFunction t = sf_translate(v, indicator_coset(h, L, w.ctx), w.ctx);
    CHECK(sf_equal(t, indicator_coset(vec_sub(h, v), L, w.ctx), w.ctx));
}

TEST_CASE("evaluation oracle: table lookup equals the defining sum") {
    std::mt19937_64 rng(37);
    for (long p : {3L, 5L}) {
        World w(p, 0);
        for (int i = 0; i < 3; ++i) {
            SchwartzFunction f = random_sf(rng, w, 1);
            // collect representatives and coefficients once
            std::vector<std::pair<VecQ, CoeffElem>> terms;
            for (const auto& [k, c] : f.table()) terms.emplace_back(f.rep_of(k), c);
            for (int t = 0; t < 50; ++t) {
                long num = (long)(rng() % 41) - 20;
                long den = 1 + (long)(rng() % 12);
                VecQ x{mpq_class(num, den)};
                // oracle: sum of coefficients of cosets containing x
                CoeffElem expect = w.R.zero();
                for (const auto& [hh, c] : terms)
                    if (f.inner().contains(vec_sub(x, hh))) expect = w.R.add(expect, c);
                CHECK(w.R.eq(evaluate(f, x, w.ctx), expect));
            }
        }
    }
}

TEST_CASE("modulate agrees with pointwise products at sample points") {
    World w(3, 1);
    std::mt19937_64 rng(41);
    SchwartzFunction f = random_sf(rng, w, 1);
    VecQ vstar{mpq_class(2, 3)};
    SchwartzFunction m = sf_modulate(vstar, f, w.ctx);
    for (int t = 0; t < 20; ++t) {
        long num = (long)(rng() % 41) - 20;
        long den = 1 + (long)(rng() % 9);
        VecQ x{mpq_class(num, den)};
        CoeffElem expect =
            w.R.mul(evaluate(f, x, w.ctx), char_eval(w.ctx.chi, dot(x, vstar), w.R));
        CHECK(w.R.eq(evaluate(m, x, w.ctx), expect));
    }
}

TEST_CASE("canonical form merges equal-coefficient cosets") {
    World w(3, 0);
    Lattice O = Lattice::standard(1, 3);
    // 1_O written as a sum over O/3O cosets must canonicalize back to 1_O
    std::vector<std::pair<VecQ, CoeffElem>> cosets;
    for (long j = 0; j < 3; ++j) cosets.emplace_back(VecQ{mpq_class(j)}, w.R.one());
    SchwartzFunction f = sf_from_cosets(O, O.scaled(1), cosets, w.ctx);
    SchwartzFunction g = indicator(O, w.ctx);
    CHECK(f.inner() == g.inner());
    CHECK(f.outer() == g.outer());
    CHECK(sf_equal(f, g, w.ctx));
}

TEST_CASE("blow-up guard") {
    World w(3, 0);
    w.ctx.table_cap = 10;
    Lattice O = Lattice::standard(2, 3);
    CHECK_THROWS_AS((void)coset_reps(O.scaled(-2), O.scaled(2), w.ctx.table_cap), blowup_error);
}

TEST_CASE("lattice membership error for coset_reps") {
    Lattice O = Lattice::standard(1, 3);
    CHECK_THROWS_AS((void)coset_reps(O.scaled(1), O, 1000), std::invalid_argument);
}
