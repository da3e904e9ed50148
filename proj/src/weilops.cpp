#include "weilrep/weilops.hpp"

#include <algorithm>

namespace weilrep {

OperatorWord OperatorWord::concat(const OperatorWord& o) const {
    OperatorWord w(n);
    w.letters = letters;
    w.letters.insert(w.letters.end(), o.letters.begin(), o.letters.end());
    return w;
}

namespace {

VecQ pack(const VecQ& v, const VecQ& vstar) {
    VecQ w = v;
    w.insert(w.end(), vstar.begin(), vstar.end());
    return w;
}

long vmin_vec(const VecQ& v, long p) {
    long m = VAL_INF;
    for (const auto& c : v)
        if (c != 0) m = std::min(m, valuation(c, p));
    return m;
}

// t_0(f) needs the inner lattice refined so chi(f(h + .)) is constant:
// rho(inner') must pair into ker chi against the outer lattice and f must
// be chi-trivial on inner'.
Lattice t0_refined_inner(const QuadForm& f, const Lattice& outer, const Lattice& inner,
                         const SchwartzContext& ctx) {
    const long l = ctx.conductor(), p = ctx.p();
    MatQ rho = f.rho();
    Lattice L = sublattice_with_image_in(inner, outer.basis().transpose() * rho, l);
    // valuation of f on L from the basis
    long nu = VAL_INF;
    const MatQ& B = L.basis();
    long n = L.dim();
    std::vector<VecQ> cols(n, VecQ(n));
    for (long j = 0; j < n; ++j)
        for (long i = 0; i < n; ++i) cols[j][i] = B.at(i, j);
    for (long i = 0; i < n; ++i) {
        mpq_class fi = f.eval(cols[i]);
        if (fi != 0) nu = std::min(nu, valuation(fi, p));
        for (long j = i + 1; j < n; ++j) {
            mpq_class cross = dot(cols[i], rho * cols[j]);
            if (cross != 0) nu = std::min(nu, valuation(cross, p));
        }
    }
    if (nu >= l) return L;
    long k = (l - nu + 1) / 2;
    return L.scaled(k);
}

} // namespace

SchwartzFunction apply_letter(const Letter& l, const SchwartzFunction& f, const SchwartzContext& ctx) {
    const CoeffRing& R = ctx.R();
    if (const auto* u = std::get_if<LetterU>(&l)) {
        SchwartzFunction g = sf_translate(u->v, f, ctx);
        g = sf_modulate(u->vstar, g, ctx);
        return R.is_one(u->t) ? g : sf_scale(u->t, g, ctx);
    }
    if (const auto* d = std::get_if<LetterD0>(&l)) {
        long vdet = valuation(d->alpha.det(), ctx.p());
        SchwartzFunction g = sf_compose_inv(d->alpha, f, ctx);
        // |alpha|^{-1/2} = q^{v(det)/2}
        return sf_scale(R.q_power_half(vdet), g, ctx);
    }
    if (const auto* dp = std::get_if<LetterDP0>(&l)) {
        long vdet = valuation(dp->beta.det(), ctx.p());
        SchwartzFunction g = fourier(f, ctx);
        g = sf_compose_inv(dp->beta, g, ctx);
        // beta maps the dual side back to X: |beta| = q^{-v(det) - n l}
        long e = -module_exponent(vdet, f.dim(), ctx.conductor(), MapSide::dual_to_primal);
        return sf_scale(R.q_power_half(e), g, ctx);
    }
    if (const auto* t = std::get_if<LetterT0>(&l)) {
        if (f.is_zero()) return f;
        Lattice inner = t0_refined_inner(t->f, f.outer(), f.inner(), ctx);
        Lattice outer = f.outer();
        const QuadForm& q = t->f;
        std::vector<std::pair<VecQ, CoeffElem>> cosets;
        for (const auto& h : coset_reps(outer, inner, ctx.table_cap)) {
            CoeffElem c = evaluate(f, h, ctx);
            if (R.is_zero(c)) continue;
            cosets.emplace_back(h, R.mul(c, char_eval(ctx.chi, q.eval(h), R)));
        }
        return sf_from_cosets(outer, inner, cosets, ctx);
    }
    const auto& s = std::get<LetterScalar>(l);
    return sf_scale(s.c, f, ctx);
}

SchwartzFunction apply(const OperatorWord& w, const SchwartzFunction& f, const SchwartzContext& ctx) {
    SchwartzFunction g = f;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) g = apply_letter(*it, g, ctx);
    return g;
}

OperatorWord inverse_word(const OperatorWord& w, const SchwartzContext& ctx) {
    const CoeffRing& R = ctx.R();
    OperatorWord out(w.n);
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        if (const auto* u = std::get_if<LetterU>(&*it)) {
            CoeffElem tw = char_eval(ctx.chi, dot(u->v, u->vstar), R);
            out.push(LetterU{vec_neg(u->v), vec_neg(u->vstar), R.mul(R.inv(u->t), tw)});
        } else if (const auto* d = std::get_if<LetterD0>(&*it)) {
            out.push(LetterD0{d->alpha.inverse()});
        } else if (const auto* dp = std::get_if<LetterDP0>(&*it)) {
            out.push(LetterDP0{-dp->beta.transpose()});
        } else if (const auto* t = std::get_if<LetterT0>(&*it)) {
            out.push(LetterT0{t->f.negated()});
        } else {
            out.push(LetterScalar{R.inv(std::get<LetterScalar>(*it).c)});
        }
    }
    return out;
}

CoeffElem heisenberg_F(const VecQ& w1, const VecQ& w2, const SchwartzContext& ctx) {
    return char_eval(ctx.chi, sympl_B(w1, w2), ctx.R());
}

LetterU conj_on_heisenberg(const Letter& s, const LetterU& u, const SchwartzContext& ctx) {
    const long n = static_cast<long>(u.v.size());
    SymplecticMatrix sigma;
    if (const auto* d = std::get_if<LetterD0>(&s))
        sigma = gen_d(d->alpha);
    else if (const auto* dp = std::get_if<LetterDP0>(&s))
        sigma = gen_dprime(dp->beta);
    else if (const auto* t = std::get_if<LetterT0>(&s))
        sigma = gen_t(t->f);
    else
        sigma = SymplecticMatrix::identity(n);
    VecQ w = pack(u.v, u.vstar);
    VecQ sw = sigma.apply(w);
    CoeffElem tw = char_eval(ctx.chi, f_sigma(sigma, w), ctx.R());
    return LetterU{VecQ(sw.begin(), sw.begin() + n), VecQ(sw.begin() + n, sw.end()),
                   ctx.R().mul(u.t, tw)};
}

long natural_depth(const OperatorWord& w, const SchwartzContext& ctx) {
    const long p = ctx.p(), l = ctx.conductor();
    long depth = 1;
    for (const auto& letter : w.letters) {
        long d = 0;
        if (const auto* u = std::get_if<LetterU>(&letter)) {
            long a = vmin_vec(u->v, p), b = vmin_vec(u->vstar, p);
            if (a < VAL_INF) d = std::max(d, -a);
            if (b < VAL_INF) d = std::max(d, l - b);
        } else if (const auto* dd = std::get_if<LetterD0>(&letter)) {
            d = std::labs(valuation(dd->alpha.det(), p));
        } else if (const auto* dp = std::get_if<LetterDP0>(&letter)) {
            d = std::labs(valuation(dp->beta.det(), p)) + std::labs(l);
        } else if (const auto* t = std::get_if<LetterT0>(&letter)) {
            long m = min_valuation(t->f.rho(), p);
            if (m < VAL_INF) d = std::max(0L, (l - m + 1) / 2);
        }
        depth = std::max(depth, d);
    }
    return depth;
}

std::vector<SchwartzFunction> probe_family(long n, long depth, long max_probes,
                                           const SchwartzContext& ctx) {
    std::vector<SchwartzFunction> probes;
    Lattice O = Lattice::standard(n, ctx.p());
    probes.push_back(indicator(O, ctx));
    for (long k = 1; k <= depth; ++k) {
        Lattice big = O.scaled(-k), small = O.scaled(k);
        std::vector<VecQ> reps;
        try {
            reps = coset_reps(big, small, ctx.table_cap);
        } catch (const blowup_error&) {
            break;
        }
        if (static_cast<long>(probes.size() + reps.size()) > max_probes) break;
        for (const auto& h : reps) probes.push_back(indicator_coset(h, small, ctx));
    }
    return probes;
}

CoeffElem scalar_ratio(const OperatorWord& w1, const OperatorWord& w2, const SchwartzContext& ctx,
                       RatioOptions opt) {
    if (w1.n != w2.n) throw std::invalid_argument("scalar_ratio: dimension mismatch");
    const CoeffRing& R = ctx.R();
    long depth = std::max({opt.depth, natural_depth(w1, ctx), natural_depth(w2, ctx)});
    auto probes = probe_family(w1.n, depth, opt.max_probes, ctx);
    bool have = false;
    CoeffElem ratio = R.one();
    for (const auto& P : probes) {
        SchwartzFunction a = apply(w1, P, ctx), b = apply(w2, P, ctx);
        if (b.is_zero()) {
            if (!a.is_zero()) throw not_proportional_error("images differ on a probe");
            continue;
        }
        if (!have) {
            // candidate from any nonzero coset of b
            const auto& [key, val] = *b.table().begin();
            CoeffElem anum = evaluate(a, b.rep_of(key), ctx);
            ratio = R.mul(anum, R.inv(val));
            have = true;
        }
        if (!sf_equal(a, sf_scale(ratio, b, ctx), ctx))
            throw not_proportional_error("images differ beyond a global scalar");
    }
    if (!have) throw not_proportional_error("all probes vanished");
    return ratio;
}

} // namespace weilrep
