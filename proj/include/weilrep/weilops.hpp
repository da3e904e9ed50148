// The operator layer on S(X): Heisenberg operators U(w,t), the lifts
// d_0(alpha), d'_0(beta), t_0(f) of the symplectic generators, words of
// such letters acting exactly on Schwartz functions, closed-form
// conjugation of Heisenberg operators, and scalar-ratio extraction on a
// probe family (the computational content of the R^x-kernel).

#pragma once

#include <variant>
#include <vector>

#include "weilrep/schwartz.hpp"
#include "weilrep/symplectic.hpp"

namespace weilrep {

struct not_proportional_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// U((v,v*),t) Phi : x -> t Phi(x+v) <x, v*>
struct LetterU {
    VecQ v, vstar;
    CoeffElem t;
};
// d_0(alpha) Phi = |alpha|^{-1/2} (Phi o alpha^{-1})
struct LetterD0 {
    MatQ alpha;
};
// d'_0(beta) Phi = |beta|^{-1/2} (F Phi o beta^{-1})
struct LetterDP0 {
    MatQ beta;
};
// t_0(f) Phi = (chi o f) . Phi
struct LetterT0 {
    QuadForm f;
};
struct LetterScalar {
    CoeffElem c;
};

using Letter = std::variant<LetterU, LetterD0, LetterDP0, LetterT0, LetterScalar>;

// letters compose left-to-right as operator products: word {A, B, C}
// acts as A(B(C(Phi)))
struct OperatorWord {
    long n = 1;
    std::vector<Letter> letters;

    OperatorWord() = default;
    explicit OperatorWord(long dim) : n(dim) {}
    OperatorWord& push(Letter l) {
        letters.push_back(std::move(l));
        return *this;
    }
    OperatorWord concat(const OperatorWord& o) const;
};

SchwartzFunction apply_letter(const Letter& l, const SchwartzFunction& f, const SchwartzContext& ctx);
SchwartzFunction apply(const OperatorWord& w, const SchwartzFunction& f, const SchwartzContext& ctx);

OperatorWord inverse_word(const OperatorWord& w, const SchwartzContext& ctx);

// F(w1, w2) = chi(B(w1, w2)); w = (v, v*) packed as a 2n-vector
CoeffElem heisenberg_F(const VecQ& w1, const VecQ& w2, const SchwartzContext& ctx);

// closed-form conjugate s U(w,t) s^{-1} = U(sigma w, t chi(f_sigma(w)))
// for s one of d_0 / d'_0 / t_0 with symplectic image sigma
LetterU conj_on_heisenberg(const Letter& s, const LetterU& u, const SchwartzContext& ctx);

struct RatioOptions {
    long depth = 3;        // probe scale k ranges over 0..depth
    long max_probes = 512; // family truncated beyond this budget
};

// smallest probe depth covering the scales a word naturally moves
long natural_depth(const OperatorWord& w, const SchwartzContext& ctx);

// probes 1_{h + p^k O^n}, h over p^{-k}O^n / p^k O^n, k = 0..depth
std::vector<SchwartzFunction> probe_family(long n, long depth, long max_probes,
                                           const SchwartzContext& ctx);

// t with apply(w1, P) = t apply(w2, P) for every probe P; throws
// not_proportional_error when no global scalar works
CoeffElem scalar_ratio(const OperatorWord& w1, const OperatorWord& w2, const SchwartzContext& ctx,
                       RatioOptions opt = {});

} // namespace weilrep
