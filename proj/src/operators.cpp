#include "stokes/operators.hpp"

#include <cctype>
#include <sstream>

namespace stokes {

ScalarOperator ScalarOperator::make(std::vector<PuiseuxPoly> coeffs) {
    if (coeffs.size() < 2) throw DomainError("scalar operator must have order >= 1");
    for (const auto& c : coeffs)
        if (!c.is_laurent()) throw DomainError("scalar operator coefficients must be Laurent");
    if (coeffs.back().is_zero()) throw ZeroLeadingCoefficient();
    return ScalarOperator{std::move(coeffs)};
}

SystemOperator SystemOperator::make(long N, std::vector<std::vector<PuiseuxPoly>> A) {
    long m = static_cast<long>(A.size());
    if (m < 1) throw DomainError("system size must be positive");
    if (N < 1) throw DomainError("pole order must be positive");
    for (const auto& row : A) {
        if (static_cast<long>(row.size()) != m) throw DomainError("system matrix must be square");
        for (const auto& e : row)
            if (!e.is_laurent() || !e.holomorphic())
                throw DomainError("system matrix entries must be holomorphic at 0");
    }
    return SystemOperator{m, N, std::move(A)};
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Cursor {
    std::string_view s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(msg, i); }

    std::string digits() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected digits");
        std::string d(s.substr(start, i - start));
        while (d.size() > 1 && d.front() == '0') d.erase(d.begin());
        return d;
    }

    // unsigned rational: digits [ '/' digits ]
    Rational unsigned_rational() {
        std::string num = digits();
        if (accept('/')) {
            std::string den = digits();
            if (Rational(den) == 0) fail("zero denominator");
            return Rational(num) / Rational(den);
        }
        return Rational(num);
    }

    long signed_int() {
        skip_ws();
        bool neg = false;
        if (accept('-')) neg = true;
        else accept('+');
        std::string d = digits();
        long v = std::stol(d);
        return neg ? -v : v;
    }
};

// scalar := '(' signed (('+'|'-') unsigned? 'i')? ')' | unsigned ['i'] | 'i'
GaussianRational parse_scalar(Cursor& c) {
    if (c.accept('(')) {
        bool neg = c.accept('-');
        GaussianRational v;
        if (c.peek() == 'i') {
            c.accept('i');
            v = GaussianRational(Rational(0), neg ? Rational(-1) : Rational(1));
        } else {
            Rational first = c.unsigned_rational();
            if (c.peek() == 'i') {
                c.accept('i');
                v = GaussianRational(Rational(0), neg ? -first : first);
            } else {
                v = GaussianRational(neg ? -first : first);
                if (c.peek() == '+' || c.peek() == '-') {
                    bool ineg = c.accept('-');
                    if (!ineg) c.accept('+');
                    Rational imag(1);
                    if (c.peek() != 'i') imag = c.unsigned_rational();
                    if (!c.accept('i')) c.fail("expected 'i' in complex literal");
                    v.im = ineg ? -imag : imag;
                }
            }
        }
        if (!c.accept(')')) c.fail("expected ')'");
        return v;
    }
    if (c.peek() == 'i') {
        c.accept('i');
        return GaussianRational(Rational(0), Rational(1));
    }
    Rational r = c.unsigned_rational();
    if (c.peek() == 'i') {
        c.accept('i');
        return GaussianRational(Rational(0), r);
    }
    return GaussianRational(r);
}

struct ParsedTerm {
    PuiseuxPoly coeff;
    long dpow = 0;
};

ParsedTerm parse_term(Cursor& c) {
    ParsedTerm t;
    t.coeff = PuiseuxPoly::constant(GaussianRational(1));
    bool saw_factor = false;
    bool saw_d = false;
    for (;;) {
        c.skip_ws();
        if (saw_factor && c.accept('*')) c.skip_ws();
        char p = c.peek();
        if (p == 'z') {
            if (saw_d) c.fail("coefficient factor after 'd' is not supported");
            c.accept('z');
            long e = 1;
            if (c.accept('^')) e = c.signed_int();
            t.coeff = t.coeff * PuiseuxPoly::monomial(GaussianRational(1), e);
            saw_factor = true;
        } else if (p == 'd') {
            if (saw_d) c.fail("repeated 'd' factor");
            c.accept('d');
            long e = 1;
            if (c.accept('^')) {
                c.skip_ws();
                if (c.peek() == '-') c.fail("derivative power must be nonnegative");
                e = c.signed_int();
            }
            t.dpow = e;
            saw_d = true;
            saw_factor = true;
        } else if (p == '(' || p == 'i' || std::isdigit(static_cast<unsigned char>(p))) {
            if (saw_d) c.fail("coefficient factor after 'd' is not supported");
            GaussianRational s = parse_scalar(c);
            t.coeff = t.coeff.scaled(s);
            saw_factor = true;
        } else {
            break;
        }
    }
    if (!saw_factor) c.fail("expected a term");
    return t;
}

}  // namespace

ScalarOperator parse_operator(std::string_view text) {
    Cursor c{text};
    std::vector<ParsedTerm> terms;
    bool neg = false;
    if (c.accept('-')) neg = true;
    else c.accept('+');
    for (;;) {
        ParsedTerm t = parse_term(c);
        if (neg) t.coeff = -t.coeff;
        terms.push_back(std::move(t));
        if (c.eof()) break;
        if (c.accept('+')) neg = false;
        else if (c.accept('-')) neg = true;
        else c.fail("expected '+', '-' or end of input");
    }
    long order = 0;
    for (const auto& t : terms) order = std::max(order, t.dpow);
    if (order < 1) throw SyntaxError("operator must contain a derivative term 'd'", text.size());
    std::vector<PuiseuxPoly> coeffs(static_cast<std::size_t>(order) + 1);
    for (const auto& t : terms)
        coeffs[static_cast<std::size_t>(t.dpow)] = coeffs[static_cast<std::size_t>(t.dpow)] + t.coeff;
    if (coeffs.back().is_zero()) throw ZeroLeadingCoefficient();
    return ScalarOperator::make(std::move(coeffs));
}

PuiseuxPoly parse_poly(std::string_view text) {
    Cursor c{text};
    PuiseuxPoly acc;
    bool neg = false;
    if (c.accept('-')) neg = true;
    else c.accept('+');
    for (;;) {
        ParsedTerm t = parse_term(c);
        if (t.dpow != 0) c.fail("'d' is not allowed in a polynomial literal");
        acc = neg ? acc - t.coeff : acc + t.coeff;
        if (c.eof()) break;
        if (c.accept('+')) neg = false;
        else if (c.accept('-')) neg = true;
        else c.fail("expected '+', '-' or end of input");
    }
    return acc;
}

std::string ScalarOperator::str() const {
    // One monomial per printed term; the parser re-accumulates by d-power.
    std::ostringstream os;
    bool first = true;
    for (long i = order(); i >= 0; --i) {
        const PuiseuxPoly& c = a(i);
        for (auto it = c.terms().rbegin(); it != c.terms().rend(); ++it) {
            const auto& [k, coeff] = *it;
            bool negated = coeff.is_real() && coeff.re < 0;
            GaussianRational cp = negated ? -coeff : coeff;
            std::string cs = cp.str();
            bool is_unit = cp.is_real() && cp.re == 1;
            if (is_unit && (k != 0 || i > 0)) cs.clear();
            if (first) {
                if (negated) os << "-";
                first = false;
            } else {
                os << (negated ? " - " : " + ");
            }
            os << cs;
            if (k != 0) {
                if (!cs.empty()) os << "*";
                os << "z";
                if (k != 1) os << "^" << k;
            }
            if (i > 0) {
                if (!cs.empty() || k != 0) os << "*";
                os << "d";
                if (i > 1) os << "^" << i;
            }
        }
    }
    if (first) os << "0";
    return os.str();
}

SystemOperator companion_system(const ScalarOperator& op) {
    long n = op.order();
    const PuiseuxPoly& an = op.a(n);
    std::vector<PuiseuxPoly> ratio(static_cast<std::size_t>(n));
    long max_pole = 1;
    for (long i = 0; i < n; ++i) {
        PuiseuxPoly q;
        if (!PuiseuxPoly::try_divide(op.a(i), an, q))
            throw NonLaurentQuotient("a_" + std::to_string(i) +
                                     " is not divisible by the leading coefficient");
        ratio[static_cast<std::size_t>(i)] = q;
        if (!q.is_zero()) max_pole = std::max(max_pole, -std::min(0L, q.val_int()));
    }
    long N = max_pole;
    // A = -z^N B with B the companion matrix of the monic form.
    std::vector<std::vector<PuiseuxPoly>> A(static_cast<std::size_t>(n),
                                            std::vector<PuiseuxPoly>(static_cast<std::size_t>(n)));
    for (long r = 0; r + 1 < n; ++r)
        A[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + 1)] =
            -PuiseuxPoly::monomial(GaussianRational(1), N);
    for (long j = 0; j < n; ++j)
        A[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(j)] =
            ratio[static_cast<std::size_t>(j)].shifted(N);
    return SystemOperator::make(N, std::move(A));
}

ScalarOperator compose(const ScalarOperator& P, const ScalarOperator& Q) {
    long np = P.order(), nq = Q.order();
    std::vector<PuiseuxPoly> out(static_cast<std::size_t>(np + nq) + 1);
    // d^i (b g) = sum_s C(i,s) b^{(s)} g^{(i-s)}
    std::vector<std::vector<Rational>> binom(static_cast<std::size_t>(np) + 1);
    for (long i = 0; i <= np; ++i) {
        binom[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(i) + 1);
        for (long s = 0; s <= i; ++s)
            binom[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] =
                (s == 0 || s == i)
                    ? Rational(1)
                    : binom[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(s - 1)] +
                          binom[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(s)];
    }
    for (long i = 0; i <= np; ++i) {
        if (P.a(i).is_zero()) continue;
        for (long j = 0; j <= nq; ++j) {
            if (Q.a(j).is_zero()) continue;
            PuiseuxPoly der = Q.a(j);
            for (long s = 0; s <= i; ++s) {
                PuiseuxPoly contrib =
                    (P.a(i) * der).scaled(GaussianRational(binom[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)]));
                std::size_t idx = static_cast<std::size_t>(i - s + j);
                out[idx] = out[idx] + contrib;
                der = der.derivative();
            }
        }
    }
    return ScalarOperator::make(std::move(out));
}

}  // namespace stokes
