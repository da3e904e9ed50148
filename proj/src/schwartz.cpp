#include "weilrep/schwartz.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace weilrep {

namespace {

mpq_class p_power_q(long p, long e) {
    mpq_class r(1), q(p);
    for (long i = 0; i < (e >= 0 ? e : -e); ++i) r *= q;
    if (e < 0) r = 1 / r;
    return r;
}

} // namespace

// ------------------------------ Lattice ------------------------------

Lattice Lattice::standard(long n, long p) { return from_basis(MatQ::identity(n), p); }

Lattice Lattice::from_basis(const MatQ& m, long p) {
    if (m.rows() != m.cols()) throw std::invalid_argument("lattice basis must be square");
    if (m.det() == 0) throw std::invalid_argument("lattice basis must be invertible");
    Lattice L;
    L.p_ = p;
    L.basis_ = plocal_hnf(m, p);
    L.inv_ = L.basis_.inverse();
    return L;
}

Lattice Lattice::generated(const MatQ& cols, long p) {
    Lattice L;
    L.p_ = p;
    L.basis_ = plocal_hnf(cols, p);
    L.inv_ = L.basis_.inverse();
    return L;
}

bool Lattice::contains(const VecQ& x) const {
    VecQ y = inv_ * x;
    for (const auto& c : y)
        if (c != 0 && valuation(c, p_) < 0) return false;
    return true;
}

bool Lattice::contains_lattice(const Lattice& o) const { return p_integral(inv_ * o.basis_, p_); }

Lattice Lattice::sum(const Lattice& o) const {
    MatQ cols(dim(), 2 * dim());
    for (long i = 0; i < dim(); ++i)
        for (long j = 0; j < dim(); ++j) {
            cols.at(i, j) = basis_.at(i, j);
            cols.at(i, dim() + j) = o.basis_.at(i, j);
        }
    return generated(cols, p_);
}

Lattice Lattice::intersect(const Lattice& o) const {
    // (A cap B) = (A° + B°)° with L° the plain (conductor 0) dual
    Lattice da = dual(0), db = o.dual(0);
    return da.sum(db).dual(0);
}

Lattice Lattice::scaled(long k) const { return from_basis(basis_.scaled(p_power_q(p_, k)), p_); }

Lattice Lattice::transformed(const MatQ& a) const { return from_basis(a * basis_, p_); }

Lattice Lattice::dual(long conductor) const {
    return from_basis(basis_.transpose().inverse().scaled(p_power_q(p_, conductor)), p_);
}

Lattice Lattice::with_vector(const VecQ& v) const {
    MatQ cols(dim(), dim() + 1);
    for (long i = 0; i < dim(); ++i) {
        for (long j = 0; j < dim(); ++j) cols.at(i, j) = basis_.at(i, j);
        cols.at(i, dim()) = v[i];
    }
    return generated(cols, p_);
}

long Lattice::det_valuation() const {
    mpq_class d(1);
    for (long i = 0; i < dim(); ++i) d *= basis_.at(i, i);
    return valuation(d, p_);
}

Lattice sublattice_with_image_in(const Lattice& L, const MatQ& C, long l) {
    // {M y : y in O^n, C M y in p^l O^k}
    MatQ W = C * L.basis();
    SmithResult s = plocal_smith(W, L.p());
    long n = L.dim();
    VecQ diag(n, mpq_class(1));
    for (long i = 0; i < n; ++i) {
        long d = (i < static_cast<long>(s.exponents.size())) ? s.exponents[i] : VAL_INF;
        long c = (d >= l) ? 0 : l - d;
        diag[i] = p_power_q(L.p(), c);
    }
    return Lattice::from_basis(L.basis() * s.Vinv * MatQ::diagonal(diag), L.p());
}

// --------------------------- volumes / coords ---------------------------

long volume_exponent(const Lattice& L, Side side, long conductor) {
    long e = -L.det_valuation();
    if (side == Side::dual) e += L.dim() * conductor;
    return e;
}

CoeffElem volume(const Lattice& L, Side side, const SchwartzContext& ctx) {
    return ctx.R().q_power(volume_exponent(L, side, ctx.conductor()));
}

CosetCoords coset_coords(const Lattice& outer, const Lattice& inner, long table_cap) {
    if (!outer.contains_lattice(inner))
        throw std::invalid_argument("inner lattice not contained in outer lattice");
    MatQ A = outer.basis_inv() * inner.basis();
    SmithResult s = plocal_smith(A, outer.p());
    CosetCoords cc;
    cc.exponents = s.exponents;
    cc.rep_basis = outer.basis() * s.U;
    cc.coord_mat = s.Uinv * outer.basis_inv();
    cc.index = 1;
    for (long e : s.exponents) {
        if (e < 0 || e >= VAL_INF) throw std::logic_error("coset_coords: bad exponent");
        long r = 1;
        for (long i = 0; i < e; ++i) {
            r *= outer.p();
            if (r > table_cap)
                throw blowup_error("coset table of size > cap (" + std::to_string(table_cap) + ")");
        }
        cc.radix.push_back(r);
        if (cc.index > table_cap / r)
            throw blowup_error("coset table of size > cap (" + std::to_string(table_cap) + ")");
        cc.index *= r;
    }
    return cc;
}

std::vector<VecQ> coset_reps(const Lattice& L1, const Lattice& L2, long table_cap) {
    CosetCoords cc = coset_coords(L1, L2, table_cap);
    std::vector<VecQ> out;
    out.reserve(cc.index);
    std::vector<long> key(cc.radix.size(), 0);
    for (long c = 0; c < cc.index; ++c) {
        VecQ k(key.size());
        for (size_t i = 0; i < key.size(); ++i) k[i] = key[i];
        out.push_back(cc.rep_basis * k);
        for (size_t i = 0; i < key.size(); ++i) {
            if (++key[i] < cc.radix[i]) break;
            key[i] = 0;
        }
    }
    return out;
}

// --------------------------- SchwartzFunction ---------------------------

VecQ SchwartzFunction::rep_of(const std::vector<long>& key) const {
    VecQ k(key.size());
    for (size_t i = 0; i < key.size(); ++i) k[i] = key[i];
    return coords_.rep_basis * k;
}

std::vector<long> SchwartzFunction::key_of(const VecQ& x) const {
    VecQ y = coords_.coord_mat * x;
    std::vector<long> key(y.size());
    for (size_t i = 0; i < y.size(); ++i) key[i] = mod_pk(y[i], outer_.p(), coords_.exponents[i]);
    return key;
}

class SchwartzBuilder {
  public:
    static SchwartzFunction build(const Lattice& outer, const Lattice& inner, CosetCoords coords,
                                  SchwartzFunction::Table table) {
        SchwartzFunction f;
        f.outer_ = outer;
        f.inner_ = inner;
        f.coords_ = std::move(coords);
        f.table_ = std::move(table);
        return f;
    }
};

namespace {

SchwartzFunction make_dense(const Lattice& outer, const Lattice& inner, const SchwartzContext& ctx,
                            const std::function<CoeffElem(const VecQ&)>& fill) {
    CosetCoords cc = coset_coords(outer, inner, ctx.table_cap);
    SchwartzFunction::Table table;
    std::vector<long> key(cc.radix.size(), 0);
    for (long c = 0; c < cc.index; ++c) {
        VecQ k(key.size());
        for (size_t i = 0; i < key.size(); ++i) k[i] = key[i];
        CoeffElem v = fill(cc.rep_basis * k);
        if (!ctx.R().is_zero(v)) table.emplace(key, std::move(v));
        for (size_t i = 0; i < key.size(); ++i) {
            if (++key[i] < cc.radix[i]) break;
            key[i] = 0;
        }
    }
    return SchwartzBuilder::build(outer, inner, std::move(cc), std::move(table));
}

// canonicalize: trim support, coarsen the inner lattice to the maximal
// period, and rebuild on canonical coordinates
SchwartzFunction canonicalize(SchwartzFunction f, const SchwartzContext& ctx) {
    const long n = f.dim(), p = ctx.p();
    // drop explicit zeros
    SchwartzFunction::Table cleaned;
    for (const auto& [k, v] : f.table())
        if (!ctx.R().is_zero(v)) cleaned.emplace(k, v);
    if (cleaned.empty()) {
        Lattice O = Lattice::standard(n, p);
        return SchwartzBuilder::build(O, O, coset_coords(O, O, ctx.table_cap), {});
    }
    f = SchwartzBuilder::build(f.outer(), f.inner(), coset_coords(f.outer(), f.inner(), ctx.table_cap),
                               std::move(cleaned));

    auto support_outer = [&](const SchwartzFunction& g) {
        MatQ cols(n, n + static_cast<long>(g.table().size()));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) cols.at(i, j) = g.inner().basis().at(i, j);
        long j = n;
        for (const auto& [k, v] : g.table()) {
            VecQ h = g.rep_of(k);
            for (long i = 0; i < n; ++i) cols.at(i, j) = h[i];
            ++j;
        }
        return Lattice::generated(cols, p);
    };

    auto rebuild = [&](const SchwartzFunction& g, const Lattice& outer, const Lattice& inner) {
        return make_dense(outer, inner, ctx, [&](const VecQ& x) { return evaluate(g, x, ctx); });
    };

    f = rebuild(f, support_outer(f), f.inner());

    // grow the inner lattice by index-p steps while the function stays
    // constant on the larger cosets
    bool grew = true;
    while (grew && !f.table().empty()) {
        grew = false;
        // candidate directions: nonzero d in F_p^n with first nonzero = 1
        std::vector<std::vector<long>> dirs;
        std::vector<long> d(n, 0);
        while (true) {
            long i = 0;
            for (; i < n; ++i) {
                if (++d[i] < p) break;
                d[i] = 0;
            }
            if (i == n) break;
            long first = -1;
            for (long j = n - 1; j >= 0; --j)
                if (d[j] != 0) first = j;
            if (first >= 0 && d[first] == 1) dirs.push_back(d);
        }
        for (const auto& dir : dirs) {
            VecQ dv(n, mpq_class(0));
            for (long i = 0; i < n; ++i) dv[i] = dir[i];
            VecQ w = f.inner().basis() * dv;
            for (auto& c : w) c /= p;
            // constancy of f on cosets of span(inner, w)
            bool constant = true;
            for (const auto& [k, val] : f.table()) {
                VecQ h = f.rep_of(k);
                VecQ x = h;
                for (long j = 1; j < p && constant; ++j) {
                    x = vec_add(x, w);
                    if (!ctx.R().eq(evaluate(f, x, ctx), val)) constant = false;
                }
                if (!constant) break;
            }
            if (constant) {
                Lattice grown = f.inner().with_vector(w);
                f = rebuild(f, support_outer(f).sum(grown), grown);
                grew = true;
                break;
            }
        }
    }
    if (f.table().empty()) {
        Lattice O = Lattice::standard(n, p);
        return SchwartzBuilder::build(O, O, coset_coords(O, O, ctx.table_cap), {});
    }
    return rebuild(f, support_outer(f), f.inner());
}

} // namespace

SchwartzFunction sf_zero(long n, const SchwartzContext& ctx) {
    Lattice O = Lattice::standard(n, ctx.p());
    return SchwartzBuilder::build(O, O, coset_coords(O, O, ctx.table_cap), {});
}

SchwartzFunction indicator(const Lattice& L, const SchwartzContext& ctx) {
    SchwartzFunction::Table t;
    t.emplace(std::vector<long>(L.dim(), 0), ctx.R().one());
    return SchwartzBuilder::build(L, L, coset_coords(L, L, ctx.table_cap), std::move(t));
}

SchwartzFunction indicator_coset(const VecQ& h, const Lattice& L, const SchwartzContext& ctx) {
    Lattice outer = L.with_vector(h);
    CosetCoords cc = coset_coords(outer, L, ctx.table_cap);
    SchwartzFunction f = SchwartzBuilder::build(outer, L, cc, {});
    SchwartzFunction::Table t;
    t.emplace(f.key_of(h), ctx.R().one());
    return SchwartzBuilder::build(outer, L, std::move(cc), std::move(t));
}

SchwartzFunction sf_from_cosets(const Lattice& outer, const Lattice& inner,
                                const std::vector<std::pair<VecQ, CoeffElem>>& cosets,
                                const SchwartzContext& ctx) {
    Lattice big = outer;
    for (const auto& [h, c] : cosets) big = big.with_vector(h);
    CosetCoords cc = coset_coords(big, inner, ctx.table_cap);
    SchwartzFunction probe = SchwartzBuilder::build(big, inner, cc, {});
    SchwartzFunction::Table t;
    for (const auto& [h, c] : cosets) {
        auto key = probe.key_of(h);
        auto it = t.find(key);
        if (it == t.end())
            t.emplace(key, c);
        else
            it->second = ctx.R().add(it->second, c);
    }
    return canonicalize(SchwartzBuilder::build(big, inner, std::move(cc), std::move(t)), ctx);
}

CoeffElem evaluate(const SchwartzFunction& f, const VecQ& x, const SchwartzContext& ctx) {
    if (f.is_zero() || !f.outer().contains(x)) return ctx.R().zero();
    auto it = f.table().find(f.key_of(x));
    return it == f.table().end() ? ctx.R().zero() : it->second;
}

bool sf_equal(const SchwartzFunction& f, const SchwartzFunction& g, const SchwartzContext& ctx) {
    SchwartzFunction a = canonicalize(f, ctx), b = canonicalize(g, ctx);
    if (!(a.outer() == b.outer()) || !(a.inner() == b.inner())) return false;
    if (a.table().size() != b.table().size()) return false;
    auto ia = a.table().begin(), ib = b.table().begin();
    for (; ia != a.table().end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        if (!ctx.R().eq(ia->second, ib->second)) return false;
    }
    return true;
}

SchwartzFunction sf_add(const SchwartzFunction& f, const SchwartzFunction& g, const SchwartzContext& ctx) {
    if (f.is_zero()) return canonicalize(g, ctx);
    if (g.is_zero()) return canonicalize(f, ctx);
    if (f.dim() != g.dim()) throw std::invalid_argument("dimension mismatch");
    Lattice outer = f.outer().sum(g.outer());
    Lattice inner = f.inner().intersect(g.inner());
    return canonicalize(make_dense(outer, inner, ctx,
                                   [&](const VecQ& x) {
                                       return ctx.R().add(evaluate(f, x, ctx), evaluate(g, x, ctx));
                                   }),
                        ctx);
}

SchwartzFunction sf_mul(const SchwartzFunction& f, const SchwartzFunction& g, const SchwartzContext& ctx) {
    if (f.is_zero() || g.is_zero()) return sf_zero(f.dim(), ctx);
    if (f.dim() != g.dim()) throw std::invalid_argument("dimension mismatch");
    Lattice outer = f.outer().intersect(g.outer());
    Lattice inner = f.inner().intersect(g.inner());
    return canonicalize(make_dense(outer, inner, ctx,
                                   [&](const VecQ& x) {
                                       return ctx.R().mul(evaluate(f, x, ctx), evaluate(g, x, ctx));
                                   }),
                        ctx);
}

SchwartzFunction sf_scale(const CoeffElem& c, const SchwartzFunction& f, const SchwartzContext& ctx) {
    if (ctx.R().is_zero(c) || f.is_zero()) return sf_zero(f.dim(), ctx);
    SchwartzFunction::Table t;
    for (const auto& [k, v] : f.table()) t.emplace(k, ctx.R().mul(c, v));
    return canonicalize(
        SchwartzBuilder::build(f.outer(), f.inner(), coset_coords(f.outer(), f.inner(), ctx.table_cap),
                               std::move(t)),
        ctx);
}

SchwartzFunction sf_translate(const VecQ& v, const SchwartzFunction& f, const SchwartzContext& ctx) {
    if (f.is_zero()) return sf_zero(f.dim(), ctx);
    Lattice outer = f.outer().with_vector(v);
    CosetCoords cc = coset_coords(outer, f.inner(), ctx.table_cap);
    SchwartzFunction probe = SchwartzBuilder::build(outer, f.inner(), cc, {});
    SchwartzFunction::Table t;
    for (const auto& [k, val] : f.table()) t.emplace(probe.key_of(vec_sub(f.rep_of(k), v)), val);
    return canonicalize(SchwartzBuilder::build(outer, f.inner(), std::move(cc), std::move(t)), ctx);
}

SchwartzFunction sf_modulate(const VecQ& vstar, const SchwartzFunction& f, const SchwartzContext& ctx) {
    if (f.is_zero()) return sf_zero(f.dim(), ctx);
    // refine the inner lattice so <., vstar> is constant on inner cosets
    MatQ row(1, f.dim());
    for (long j = 0; j < f.dim(); ++j) row.at(0, j) = vstar[j];
    Lattice inner = sublattice_with_image_in(f.inner(), row, ctx.conductor());
    return canonicalize(make_dense(f.outer(), inner, ctx,
                                   [&](const VecQ& x) {
                                       CoeffElem c = evaluate(f, x, ctx);
                                       if (ctx.R().is_zero(c)) return c;
                                       return ctx.R().mul(c, char_eval(ctx.chi, dot(x, vstar), ctx.R()));
                                   }),
                        ctx);
}

SchwartzFunction sf_compose_inv(const MatQ& a, const SchwartzFunction& f, const SchwartzContext& ctx) {
    if (f.is_zero()) return sf_zero(f.dim(), ctx);
    Lattice outer = f.outer().transformed(a), inner = f.inner().transformed(a);
    CosetCoords cc = coset_coords(outer, inner, ctx.table_cap);
    SchwartzFunction probe = SchwartzBuilder::build(outer, inner, cc, {});
    SchwartzFunction::Table t;
    for (const auto& [k, val] : f.table()) t.emplace(probe.key_of(a * f.rep_of(k)), val);
    return canonicalize(SchwartzBuilder::build(outer, inner, std::move(cc), std::move(t)), ctx);
}

CoeffElem integrate(const SchwartzFunction& f, const SchwartzContext& ctx, Side side) {
    if (f.is_zero()) return ctx.R().zero();
    CoeffElem vol = volume(f.inner(), side, ctx);
    CoeffElem s = ctx.R().zero();
    for (const auto& [k, v] : f.table()) s = ctx.R().add(s, v);
    return ctx.R().mul(s, vol);
}

SchwartzFunction fourier(const SchwartzFunction& f, const SchwartzContext& ctx) {
    if (f.is_zero()) return sf_zero(f.dim(), ctx);
    const long l = ctx.conductor();
    Lattice outer = f.inner().dual(l), inner = f.outer().dual(l);
    CoeffElem vol = volume(f.inner(), Side::primal, ctx);
    std::vector<std::pair<VecQ, CoeffElem>> reps;
    for (const auto& [k, v] : f.table()) reps.emplace_back(f.rep_of(k), v);
    return canonicalize(make_dense(outer, inner, ctx,
                                   [&](const VecQ& gstar) {
                                       CoeffElem s = ctx.R().zero();
                                       for (const auto& [h, c] : reps)
                                           s = ctx.R().add(
                                               s, ctx.R().mul(c, char_eval(ctx.chi, dot(h, gstar), ctx.R())));
                                       return ctx.R().mul(vol, s);
                                   }),
                        ctx);
}

SchwartzFunction fourier_inverse(const SchwartzFunction& f, const SchwartzContext& ctx) {
    if (f.is_zero()) return sf_zero(f.dim(), ctx);
    const long l = ctx.conductor();
    Lattice outer = f.inner().dual(l), inner = f.outer().dual(l);
    CoeffElem vol = volume(f.inner(), Side::dual, ctx);
    std::vector<std::pair<VecQ, CoeffElem>> reps;
    for (const auto& [k, v] : f.table()) reps.emplace_back(f.rep_of(k), v);
    return canonicalize(make_dense(outer, inner, ctx,
                                   [&](const VecQ& g) {
                                       CoeffElem s = ctx.R().zero();
                                       for (const auto& [kk, c] : reps)
                                           s = ctx.R().add(
                                               s, ctx.R().mul(c, char_eval(ctx.chi, -dot(g, kk), ctx.R())));
                                       return ctx.R().mul(vol, s);
                                   }),
                        ctx);
}

SchwartzFunction convolve(const SchwartzFunction& f, const SchwartzFunction& g,
                          const SchwartzContext& ctx, Side side) {
    if (f.dim() != g.dim()) throw std::invalid_argument("dimension mismatch");
    if (f.is_zero() || g.is_zero()) return sf_zero(f.dim(), ctx);
    Lattice B = f.inner().intersect(g.inner());
    SchwartzFunction fr = make_dense(f.outer(), B, ctx, [&](const VecQ& x) { return evaluate(f, x, ctx); });
    SchwartzFunction gr = make_dense(g.outer(), B, ctx, [&](const VecQ& x) { return evaluate(g, x, ctx); });
    if (static_cast<long>(fr.table().size()) * static_cast<long>(gr.table().size()) > ctx.table_cap)
        throw blowup_error("convolution work exceeds table cap");
    Lattice outer = f.outer().sum(g.outer());
    CosetCoords cc = coset_coords(outer, B, ctx.table_cap);
    SchwartzFunction probe = SchwartzBuilder::build(outer, B, cc, {});
    CoeffElem vol = volume(B, side, ctx);
    SchwartzFunction::Table t;
    for (const auto& [k1, v1] : fr.table())
        for (const auto& [k2, v2] : gr.table()) {
            auto key = probe.key_of(vec_add(fr.rep_of(k1), gr.rep_of(k2)));
            CoeffElem term = ctx.R().mul(vol, ctx.R().mul(v1, v2));
            auto it = t.find(key);
            if (it == t.end())
                t.emplace(std::move(key), std::move(term));
            else
                it->second = ctx.R().add(it->second, term);
        }
    return canonicalize(SchwartzBuilder::build(outer, B, std::move(cc), std::move(t)), ctx);
}

} // namespace weilrep
