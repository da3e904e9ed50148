#include "weilrep/coeff.hpp"

#include <algorithm>
#include <cassert>

namespace weilrep {

namespace {

bool is_small_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long pow_long(long b, long e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

long legendre_int(long a, long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    long r = 1, base = a, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = (r * base) % p;
        base = (base * base) % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

// ---- polynomial helpers over F_ell (dense, constant term first) ----

void fp_trim(std::vector<long>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<long> fp_mul(const std::vector<long>& a, const std::vector<long>& b, long ell) {
    if (a.empty() || b.empty()) return {};
    std::vector<long> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % ell;
    }
    fp_trim(r);
    return r;
}

// a mod m, m monic after normalization
std::vector<long> fp_mod(std::vector<long> a, const std::vector<long>& m, long ell) {
    fp_trim(a);
    long dm = static_cast<long>(m.size()) - 1;
    long lead_inv = 0;
    {
        // inverse of leading coefficient of m
        long lc = m.back() % ell, t = 1;
        for (long k = 1; k < ell; ++k)
            if ((lc * k) % ell == 1) { t = k; break; }
        lead_inv = t;
    }
    while (static_cast<long>(a.size()) - 1 >= dm) {
        long da = static_cast<long>(a.size()) - 1;
        long c = (a.back() * lead_inv) % ell;
        for (long i = 0; i <= dm; ++i) {
            long idx = da - dm + i;
            a[idx] = ((a[idx] - c * m[i]) % ell + ell) % ell;
        }
        fp_trim(a);
        if (a.empty()) break;
    }
    return a;
}

std::vector<long> fp_gcd(std::vector<long> a, std::vector<long> b, long ell) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        auto r = fp_mod(a, b, ell);
        a = std::move(b);
        b = std::move(r);
    }
    // normalize monic
    if (!a.empty()) {
        long lc = a.back(), inv = 1;
        for (long k = 1; k < ell; ++k)
            if ((lc * k) % ell == 1) { inv = k; break; }
        for (auto& c : a) c = (c * inv) % ell;
    }
    return a;
}

std::vector<long> fp_powmod(std::vector<long> base, mpz_class e, const std::vector<long>& m, long ell) {
    std::vector<long> r = {1};
    base = fp_mod(std::move(base), m, ell);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            r = fp_mod(fp_mul(r, base, ell), m, ell);
        base = fp_mod(fp_mul(base, base, ell), m, ell);
        e >>= 1;
    }
    return r;
}

// cyclotomic polynomial Phi_s mod ell for s = 4 p^m (ell odd) or p^m (ell = 2)
std::vector<long> phi_s_mod_ell(long p, long m, long ell) {
    std::vector<long> phi;
    if (ell == 2) {
        long k = pow_long(p, m - 1);
        phi.assign(k * (p - 1) + 1, 0);
        for (long j = 0; j <= p - 1; ++j) phi[k * j] = 1;
    } else {
        long k = 2 * pow_long(p, m - 1);
        phi.assign(k * (p - 1) + 1, 0);
        for (long j = 0; j <= p - 1; ++j) phi[k * j] = ((j % 2 == 0) ? 1 : ell - 1);
    }
    return phi;
}

} // namespace

long CoeffRing::characteristic() const {
    return desc_.kind == RingKind::cyclotomic ? 0 : desc_.ell;
}

long CoeffRing::cyc_block(int level) const { return 2 * pow_long(desc_.prime_p, level - 1); }
long CoeffRing::cyc_len(int level) const { return cyc_block(level) * (desc_.prime_p - 1); }

CoeffRing CoeffRing::create(const CoeffRingDescriptor& d) {
    if (!is_small_prime(d.prime_p) || d.prime_p == 2)
        throw std::invalid_argument("coefficient ring requires an odd prime p");
    CoeffRing r;
    r.desc_ = d;
    if (d.kind == RingKind::finite_field) {
        if (!is_small_prime(d.ell))
            throw std::invalid_argument("ell must be prime");
        if (d.ell == d.prime_p)
            throw std::invalid_argument("ell must differ from p");
        if (d.extension_degree < 1)
            throw std::invalid_argument("extension degree must be positive");
        r.build_ff_modulus();
    }
    return r;
}

void CoeffRing::build_ff_modulus() {
    const long p = desc_.prime_p, ell = desc_.ell, m = desc_.extension_degree;
    const long s = (ell == 2 ? pow_long(p, m) : 4 * pow_long(p, m));
    root_order_ = s;
    // order of ell modulo s
    long d = 1;
    {
        long t = ell % s;
        while (t != 1) {
            t = (t * ell) % s;
            ++d;
            if (d > s) throw std::logic_error("order computation failed");
        }
    }
    if (d > 64)
        throw insufficient_extension_error("finite-field realization would need degree " + std::to_string(d));
    std::vector<long> phi = phi_s_mod_ell(p, m, ell);
    long nfac = static_cast<long>(phi.size() - 1) / d;
    if (nfac == 1) {
        modulus_ = phi;
        return;
    }
    // deterministic equal-degree factorization; all factors have degree d
    std::vector<std::vector<long>> done, work{phi};
    mpz_class half_order;
    {
        mpz_class q;
        mpz_ui_pow_ui(q.get_mpz_t(), ell, d);
        half_order = (q - 1) / 2;
    }
    long attempt = 0;
    while (!work.empty()) {
        auto f = work.back();
        work.pop_back();
        if (static_cast<long>(f.size()) - 1 == d) {
            done.push_back(f);
            continue;
        }
        bool split = false;
        for (; attempt < 20000 && !split; ++attempt) {
            std::vector<long> g;
            if (ell == 2) {
                // trace map of x^(attempt+1)
                std::vector<long> h(attempt + 2, 0);
                h[attempt + 1] = 1;
                h = fp_mod(h, f, ell);
                std::vector<long> tr = h, cur = h;
                for (long i = 1; i < d; ++i) {
                    cur = fp_mod(fp_mul(cur, cur, ell), f, ell);
                    if (tr.size() < cur.size()) tr.resize(cur.size(), 0);
                    for (size_t j = 0; j < cur.size(); ++j) tr[j] ^= cur[j];
                }
                fp_trim(tr);
                g = fp_gcd(f, tr, ell);
                if (g.size() <= 1 || g.size() == f.size()) {
                    if (!tr.empty()) tr[0] ^= 1;
                    fp_trim(tr);
                    g = fp_gcd(f, tr, ell);
                }
            } else {
                std::vector<long> h = {attempt % ell, 1}; // x + c
                auto pw = fp_powmod(h, half_order, f, ell);
                if (pw.empty())
                    pw = {ell - 1};
                else
                    pw[0] = ((pw[0] - 1) % ell + ell) % ell;
                fp_trim(pw);
                g = fp_gcd(f, pw, ell);
            }
            if (g.size() > 1 && g.size() < f.size()) {
                // divide out
                std::vector<long> q;
                {
                    std::vector<long> rem = f;
                    long dg = static_cast<long>(g.size()) - 1;
                    q.assign(f.size() - g.size() + 1, 0);
                    while (static_cast<long>(rem.size()) - 1 >= dg && !rem.empty()) {
                        long da = static_cast<long>(rem.size()) - 1;
                        long c = rem.back(); // g monic
                        q[da - dg] = c;
                        for (long i = 0; i <= dg; ++i)
                            rem[da - dg + i] = ((rem[da - dg + i] - c * g[i]) % ell + ell) % ell;
                        fp_trim(rem);
                    }
                }
                fp_trim(q);
                work.push_back(g);
                work.push_back(q);
                split = true;
            }
        }
        if (!split) throw std::logic_error("cyclotomic factorization did not split");
    }
    std::sort(done.begin(), done.end());
    modulus_ = done.front();
    // sanity: x must have order exactly s
    auto one_poly = std::vector<long>{1};
    auto xp = fp_powmod({0, 1}, mpz_class(s), modulus_, desc_.ell);
    if (xp != one_poly) throw std::logic_error("modulus construction failed");
}

// ------------------------- cyclotomic internals -------------------------

void CoeffRing::reduce_mod_phi(std::vector<mpq_class>& v, int level) const {
    const long D = cyc_len(level), k = cyc_block(level), pm1 = desc_.prime_p - 1;
    for (long d = static_cast<long>(v.size()) - 1; d >= D; --d) {
        if (v[d] == 0) continue;
        mpq_class c = v[d];
        v[d] = 0;
        long base = d - D;
        // x^D = sum_{j=0}^{p-2} (-1)^{j+1} x^{k j}
        for (long j = 0; j <= pm1 - 1; ++j) {
            if (j % 2 == 0)
                v[base + k * j] -= c;
            else
                v[base + k * j] += c;
        }
    }
    v.resize(D);
}

CoeffElem CoeffRing::cyc_coerce(const CoeffElem& a, int level) const {
    if (a.level == level) return a;
    assert(a.level < level);
    long stretch = pow_long(desc_.prime_p, level - a.level);
    std::vector<mpq_class> w;
    w.resize((a.qc.size() - 1) * stretch + 1);
    for (size_t i = 0; i < a.qc.size(); ++i)
        if (a.qc[i] != 0) w[i * stretch] = a.qc[i];
    reduce_mod_phi(w, level);
    CoeffElem r;
    r.level = level;
    r.qc = std::move(w);
    return r;
}

int CoeffRing::level_for_order(long order) const {
    if (order <= 0) throw std::invalid_argument("root order must be positive");
    long rest = order;
    int b = 0;
    while (rest % desc_.prime_p == 0) {
        rest /= desc_.prime_p;
        ++b;
    }
    if (rest != 1 && rest != 2 && rest != 4)
        throw insufficient_extension_error("order " + std::to_string(order) + " is not realizable");
    return std::max(b, 1);
}

// ------------------------- generic element ops -------------------------

CoeffElem CoeffRing::zero() const {
    CoeffElem e;
    if (desc_.kind == RingKind::cyclotomic) {
        e.level = 1;
        e.qc.assign(cyc_len(1), mpq_class(0));
    } else {
        e.ffc.assign(field_degree(), 0);
    }
    return e;
}

CoeffElem CoeffRing::one() const { return from_integer(1); }

CoeffElem CoeffRing::from_integer(long v) const { return from_rational(mpq_class(v)); }

CoeffElem CoeffRing::from_mpz(const mpz_class& v) const { return from_rational(mpq_class(v)); }

CoeffElem CoeffRing::from_rational(const mpq_class& v) const {
    CoeffElem e = zero();
    if (desc_.kind == RingKind::cyclotomic) {
        e.qc[0] = v;
    } else {
        const long ell = desc_.ell;
        mpz_class num = v.get_num() % ell, den = v.get_den() % ell;
        if (den == 0)
            throw std::invalid_argument("denominator not invertible in finite-field realization");
        long n = ((num.get_si()) % ell + ell) % ell;
        long d = ((den.get_si()) % ell + ell) % ell;
        long dinv = 1;
        for (long k = 1; k < ell; ++k)
            if ((d * k) % ell == 1) { dinv = k; break; }
        e.ffc[0] = (n * dinv) % ell;
    }
    return e;
}

CoeffElem CoeffRing::add(const CoeffElem& a, const CoeffElem& b) const {
    if (desc_.kind == RingKind::finite_field) {
        CoeffElem r = a;
        for (size_t i = 0; i < r.ffc.size(); ++i) r.ffc[i] = (r.ffc[i] + b.ffc[i]) % desc_.ell;
        return r;
    }
    int lv = std::max(a.level, b.level);
    CoeffElem x = cyc_coerce(a, lv), y = cyc_coerce(b, lv);
    for (size_t i = 0; i < x.qc.size(); ++i) x.qc[i] += y.qc[i];
    return x;
}

CoeffElem CoeffRing::sub(const CoeffElem& a, const CoeffElem& b) const { return add(a, neg(b)); }

CoeffElem CoeffRing::neg(const CoeffElem& a) const {
    CoeffElem r = a;
    if (desc_.kind == RingKind::finite_field) {
        for (auto& c : r.ffc) c = (desc_.ell - c) % desc_.ell;
    } else {
        for (auto& c : r.qc) c = -c;
    }
    return r;
}

CoeffElem CoeffRing::mul(const CoeffElem& a, const CoeffElem& b) const {
    if (desc_.kind == RingKind::finite_field) {
        CoeffElem r;
        auto prod = fp_mod(fp_mul(a.ffc, b.ffc, desc_.ell), modulus_, desc_.ell);
        prod.resize(field_degree(), 0);
        r.ffc = std::move(prod);
        return r;
    }
    int lv = std::max(a.level, b.level);
    CoeffElem x = cyc_coerce(a, lv), y = cyc_coerce(b, lv);
    std::vector<mpq_class> w(2 * x.qc.size(), mpq_class(0));
    for (size_t i = 0; i < x.qc.size(); ++i) {
        if (x.qc[i] == 0) continue;
        for (size_t j = 0; j < y.qc.size(); ++j) {
            if (y.qc[j] == 0) continue;
            w[i + j] += x.qc[i] * y.qc[j];
        }
    }
    reduce_mod_phi(w, lv);
    CoeffElem r;
    r.level = lv;
    r.qc = std::move(w);
    return r;
}

CoeffElem CoeffRing::inv(const CoeffElem& a) const {
    if (is_zero(a)) throw std::invalid_argument("inverse of zero");
    if (desc_.kind == RingKind::finite_field) {
        CoeffElem r;
        r.ffc = ff_inv(a.ffc);
        r.ffc.resize(field_degree(), 0);
        return r;
    }
    // single-term fast path: (c x^i)^-1 = c^-1 x^{N-i}
    {
        long nz = -1;
        bool single = true;
        for (size_t i = 0; i < a.qc.size(); ++i)
            if (a.qc[i] != 0) {
                if (nz >= 0) { single = false; break; }
                nz = static_cast<long>(i);
            }
        if (single && nz >= 0) {
            long N = 2 * cyc_block(a.level) * desc_.prime_p; // 4 p^level
            std::vector<mpq_class> w(N - nz + 1, mpq_class(0));
            w[(N - nz) % N] = 1 / a.qc[nz];
            reduce_mod_phi(w, a.level);
            CoeffElem r;
            r.level = a.level;
            r.qc = std::move(w);
            return r;
        }
    }
    // extended Euclid in Q[x] against Phi (irreducible, so any nonzero inverts)
    const int lv = a.level;
    const long D = cyc_len(lv), k = cyc_block(lv);
    std::vector<mpq_class> phi(D + 1, mpq_class(0));
    for (long j = 0; j <= desc_.prime_p - 1; ++j) phi[k * j] = (j % 2 == 0 ? 1 : -1);
    auto deg = [](const std::vector<mpq_class>& v) -> long {
        for (long i = static_cast<long>(v.size()) - 1; i >= 0; --i)
            if (v[i] != 0) return i;
        return -1;
    };
    std::vector<mpq_class> r0 = phi, r1 = a.qc, t0(1, mpq_class(0)), t1(1, mpq_class(1));
    while (deg(r1) > 0) {
        long d0 = deg(r0), d1 = deg(r1);
        std::vector<mpq_class> q(d0 - d1 + 1, mpq_class(0));
        std::vector<mpq_class> rem = r0;
        for (long d = d0; d >= d1; --d) {
            if (rem[d] == 0) continue;
            mpq_class c = rem[d] / r1[d1];
            q[d - d1] = c;
            for (long i = 0; i <= d1; ++i) rem[d - d1 + i] -= c * r1[i];
        }
        // t_next = t0 - q * t1
        std::vector<mpq_class> tn(std::max(t0.size(), q.size() + t1.size()), mpq_class(0));
        for (size_t i = 0; i < t0.size(); ++i) tn[i] = t0[i];
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < t1.size(); ++j) tn[i + j] -= q[i] * t1[j];
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        r1.resize(d1);
        while (r1.size() < 1) r1.resize(1);
        t0 = std::move(t1);
        t1 = std::move(tn);
    }
    long dr = deg(r1);
    if (dr != 0) throw std::invalid_argument("element is not a unit");
    mpq_class c = r1[0];
    std::vector<mpq_class> res(t1.size());
    for (size_t i = 0; i < t1.size(); ++i) res[i] = t1[i] / c;
    reduce_mod_phi(res, lv);
    CoeffElem out;
    out.level = lv;
    out.qc = std::move(res);
    return out;
}

CoeffElem CoeffRing::pow(const CoeffElem& a, long e) const {
    CoeffElem base = a;
    if (e < 0) {
        base = inv(a);
        e = -e;
    }
    CoeffElem r = one();
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

bool CoeffRing::eq(const CoeffElem& a, const CoeffElem& b) const {
    if (desc_.kind == RingKind::finite_field) return a.ffc == b.ffc;
    int lv = std::max(a.level, b.level);
    CoeffElem x = cyc_coerce(a, lv), y = cyc_coerce(b, lv);
    return x.qc == y.qc;
}

bool CoeffRing::is_zero(const CoeffElem& a) const {
    if (desc_.kind == RingKind::finite_field) {
        for (auto c : a.ffc)
            if (c) return false;
        return true;
    }
    for (const auto& c : a.qc)
        if (c != 0) return false;
    return true;
}

bool CoeffRing::is_one(const CoeffElem& a) const { return eq(a, one()); }

CoeffElem CoeffRing::root_of_unity(long order) const {
    if (order <= 0) throw std::invalid_argument("root order must be positive");
    if (desc_.kind == RingKind::cyclotomic) {
        int lv = level_for_order(order);
        long N = 4 * pow_long(desc_.prime_p, lv);
        std::vector<mpq_class> w(N / order + 1, mpq_class(0));
        w[N / order] = 1;
        reduce_mod_phi(w, lv);
        CoeffElem r;
        r.level = lv;
        r.qc = std::move(w);
        return r;
    }
    if (root_order_ % order != 0)
        throw insufficient_extension_error("order " + std::to_string(order) +
                                           " not realizable in this finite-field realization");
    std::vector<long> x = {0, 1};
    CoeffElem r;
    r.ffc = fp_powmod(x, mpz_class(root_order_ / order), modulus_, desc_.ell);
    r.ffc.resize(field_degree(), 0);
    return r;
}

CoeffElem CoeffRing::sqrt_q() const {
    const long p = desc_.prime_p;
    CoeffElem zeta = root_of_unity(p);
    CoeffElem tau = zero();
    CoeffElem zpow = one();
    for (long i = 1; i <= p - 1; ++i) {
        zpow = mul(zpow, zeta);
        tau = (legendre_int(i, p) == 1) ? add(tau, zpow) : sub(tau, zpow);
    }
    if (p % 4 == 1 || characteristic() == 2) return tau;
    CoeffElem i4 = root_of_unity(4);
    return neg(mul(i4, tau));
}

CoeffElem CoeffRing::q_power(long e) const {
    mpq_class q(desc_.prime_p);
    mpq_class r(1);
    long n = e < 0 ? -e : e;
    for (long i = 0; i < n; ++i) r *= q;
    if (e < 0) r = 1 / r;
    return from_rational(r);
}

CoeffElem CoeffRing::q_power_half(long halfexp) const {
    long fl = (halfexp >= 0) ? halfexp / 2 : -((-halfexp + 1) / 2); // floor(halfexp/2)
    CoeffElem r = q_power(fl);
    if (halfexp - 2 * fl == 1) r = mul(r, sqrt_q());
    return r;
}

long CoeffRing::order_of(const CoeffElem& a) const {
    if (is_zero(a)) return -1;
    long pmax = desc_.kind == RingKind::cyclotomic ? pow_long(desc_.prime_p, std::max(a.level, 1))
                                                   : pow_long(desc_.prime_p, desc_.extension_degree);
    std::vector<long> divisors;
    for (long twos : {1L, 2L, 4L})
        for (long pe = 1; pe <= pmax; pe *= desc_.prime_p) divisors.push_back(twos * pe);
    std::sort(divisors.begin(), divisors.end());
    for (long d : divisors)
        if (is_one(pow(a, d))) return d;
    return -1;
}

std::string CoeffRing::to_string(const CoeffElem& a) const {
    std::string s;
    if (desc_.kind == RingKind::cyclotomic) {
        bool first = true;
        for (size_t i = 0; i < a.qc.size(); ++i) {
            if (a.qc[i] == 0) continue;
            if (!first) s += " + ";
            s += a.qc[i].get_str();
            if (i > 0) s += "*z^" + std::to_string(i);
            first = false;
        }
        if (first) s = "0";
        s += " (z = zeta_" + std::to_string(4 * pow_long(desc_.prime_p, a.level)) + ")";
    } else {
        bool first = true;
        for (size_t i = 0; i < a.ffc.size(); ++i) {
            if (a.ffc[i] == 0) continue;
            if (!first) s += " + ";
            s += std::to_string(a.ffc[i]);
            if (i > 0) s += "*x^" + std::to_string(i);
            first = false;
        }
        if (first) s = "0";
    }
    return s;
}

// ------------------------- finite-field internals -------------------------

std::vector<long> CoeffRing::ff_mul(const std::vector<long>& a, const std::vector<long>& b) const {
    return fp_mod(fp_mul(a, b, desc_.ell), modulus_, desc_.ell);
}

std::vector<long> CoeffRing::ff_pow(std::vector<long> a, mpz_class e) const {
    return fp_powmod(std::move(a), std::move(e), modulus_, desc_.ell);
}

std::vector<long> CoeffRing::ff_inv(const std::vector<long>& a) const {
    // a^(ell^d - 2)
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), desc_.ell, field_degree());
    return ff_pow(a, q - 2);
}

} // namespace weilrep
