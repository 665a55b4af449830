#include "stokes/formal.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "stokes/matrix.hpp"
#include "stokes/roots.hpp"

namespace stokes {

// ---------------------------------------------------------------------------
// ExponentialPart
// ---------------------------------------------------------------------------

const GaussianRational& ExponentialPart::lead_coeff() const {
    if (terms.empty()) throw DomainError("zero part has no leading coefficient");
    return terms.back().a;
}

Interval ExponentialPart::alpha(long k) const {
    for (const auto& t : terms)
        if (t.k == k) return sqrt_i(Interval(t.a.norm2()));
    return Interval(Rational(0));
}

Angle ExponentialPart::phi(long k) const {
    for (const auto& t : terms)
        if (t.k == k) return phase_of_minus(t.a);
    throw DomainError("no term with requested exponent");
}

Interval ExponentialPart::re_minus_lambda(const Interval& rho, const Interval& theta) const {
    Interval acc;
    if (terms.empty()) return acc;
    Interval s = l == 1 ? rho : rootn_i(rho, static_cast<unsigned long>(l));
    for (const auto& t : terms) {
        Interval rad = pow_int_i(s, -t.k);
        Interval ang = phi(t.k).enclosure() - theta * Interval(Rational(t.k, l));
        acc = acc + alpha(t.k) * rad * cos_i(ang);
    }
    return acc;
}

double ExponentialPart::re_minus_lambda_point(double rho, double theta) const {
    double acc = 0;
    for (const auto& t : terms) {
        double a = alpha(t.k).mid_double();
        double ph = phi(t.k).enclosure().mid_double();
        double kl = static_cast<double>(t.k) / static_cast<double>(l);
        acc += a * std::pow(rho, -kl) * std::cos(ph - kl * theta);
    }
    return acc;
}

PartEvaluator::PartEvaluator(const ExponentialPart& p) : l(p.l) {
    for (const auto& t : p.terms) {
        TermData d{Rational(t.k, p.l), t.k, p.alpha(t.k), p.phi(t.k).enclosure()};
        terms.push_back(std::move(d));
    }
}

Interval PartEvaluator::re_minus_lambda(const Interval& rho, const Interval& theta) const {
    Interval acc;
    if (terms.empty()) return acc;
    Interval s = l == 1 ? rho : rootn_i(rho, static_cast<unsigned long>(l));
    for (const auto& t : terms) {
        Interval rad = pow_int_i(s, -t.k);
        Interval ang = t.phi - theta * Interval(t.s);
        acc = acc + t.alpha * rad * cos_i(ang);
    }
    return acc;
}

Interval PartEvaluator::lead_cos(const Interval& theta) const {
    if (terms.empty()) throw DomainError("zero part has no leading term");
    const TermData& t = terms.back();
    return cos_i(t.phi - theta * Interval(t.s));
}

bool operator==(const ExponentialPart& x, const ExponentialPart& y) {
    if (x.l != y.l || x.terms.size() != y.terms.size()) return false;
    for (std::size_t i = 0; i < x.terms.size(); ++i)
        if (x.terms[i].k != y.terms[i].k || !(x.terms[i].a == y.terms[i].a)) return false;
    return true;
}

std::string ExponentialPart::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        bool neg = it->a.is_real() && it->a.re < 0;
        GaussianRational c = neg ? -it->a : it->a;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        std::string cs = c.str();
        if (!(c.is_real() && c.re == 1)) os << cs << "*";
        if (l == 1) os << "z^-" << it->k;
        else os << "z^(-" << it->k << "/" << l << ")";
    }
    return os.str();
}

bool FormalData::has_nonzero_part() const {
    for (const auto& p : parts)
        if (!p.is_zero()) return true;
    return false;
}

Rational FormalData::max_slope() const {
    Rational s(0);
    for (const auto& p : parts) s = std::max(s, p.slope());
    return s;
}

// ---------------------------------------------------------------------------
// Newton polygon
// ---------------------------------------------------------------------------

namespace {

struct Point {
    long i;
    long h;  // v(a_i) - i
};

struct Edge {
    Rational slope;
    long i_lo, i_hi;
    long h_lo, h_hi;
    long length() const { return i_hi - i_lo; }
};

struct Polygon {
    long i_star = 0;  // slope-0 run = number of moderate solutions
    std::vector<Edge> edges;  // positive slopes, ascending
};

Polygon compute_polygon(const ScalarOperator& op) {
    std::vector<Point> pts;
    for (long i = 0; i <= op.order(); ++i)
        if (!op.a(i).is_zero()) pts.push_back({i, op.a(i).val_int() - i});
    long y_min = pts[0].h;
    for (const auto& p : pts) y_min = std::min(y_min, p.h);
    long i_star = 0;
    for (const auto& p : pts)
        if (p.h == y_min) i_star = std::max(i_star, p.i);

    Polygon pg;
    pg.i_star = i_star;
    // Lower hull of the points right of (i_star, y_min).
    std::vector<Point> hull;
    for (const auto& p : pts) {
        if (p.i < i_star) continue;
        while (hull.size() >= 2) {
            const Point& a = hull[hull.size() - 2];
            const Point& b = hull.back();
            // pop b unless it turns strictly left (slope increase)
            long cross = (b.i - a.i) * (p.h - a.h) - (b.h - a.h) * (p.i - a.i);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(p);
    }
    for (std::size_t t = 0; t + 1 < hull.size(); ++t) {
        Edge e;
        e.i_lo = hull[t].i;
        e.h_lo = hull[t].h;
        e.i_hi = hull[t + 1].i;
        e.h_hi = hull[t + 1].h;
        e.slope = Rational(e.h_hi - e.h_lo, e.i_hi - e.i_lo);
        pg.edges.push_back(std::move(e));
    }
    return pg;
}

GPoly edge_charpoly(const ScalarOperator& op, const Edge& e) {
    // Coefficients c_i gamma^{i - i_lo} for every point on the edge line.
    GPoly chi(static_cast<std::size_t>(e.length()) + 1);
    for (long i = e.i_lo; i <= e.i_hi; ++i) {
        const PuiseuxPoly& a = op.a(i);
        if (a.is_zero()) continue;
        long h = a.val_int() - i;
        if ((h - e.h_lo) * (e.i_hi - e.i_lo) != (e.h_hi - e.h_lo) * (i - e.i_lo)) continue;
        chi[static_cast<std::size_t>(i - e.i_lo)] = a.trailing_coeff();
    }
    return chi;
}

// P in variable t after z = t^q; d/dz = (1/q) t^{1-q} d/dt.
ScalarOperator ramify_operator(const ScalarOperator& op, long q) {
    long n = op.order();
    PuiseuxPoly c = PuiseuxPoly::monomial(GaussianRational(Rational(1, q)), 1 - q);
    // B[i][r]: coefficient of d^r in (c d)^i
    std::vector<std::vector<PuiseuxPoly>> B(static_cast<std::size_t>(n) + 1);
    B[0] = {PuiseuxPoly::constant(GaussianRational(1))};
    for (long i = 1; i <= n; ++i) {
        auto& cur = B[static_cast<std::size_t>(i)];
        auto& prev = B[static_cast<std::size_t>(i - 1)];
        cur.assign(static_cast<std::size_t>(i) + 1, PuiseuxPoly());
        for (long r = 0; r <= i; ++r) {
            PuiseuxPoly v;
            if (r >= 1) v = v + prev[static_cast<std::size_t>(r - 1)];
            if (r <= i - 1) v = v + prev[static_cast<std::size_t>(r)].derivative();
            cur[static_cast<std::size_t>(r)] = c * v;
        }
    }
    std::vector<PuiseuxPoly> coeffs(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) {
        if (op.a(i).is_zero()) continue;
        PuiseuxPoly ai = op.a(i).substitute_pow(q);
        for (long r = 0; r <= i; ++r)
            coeffs[static_cast<std::size_t>(r)] =
                coeffs[static_cast<std::size_t>(r)] + ai * B[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
    }
    return ScalarOperator::make(std::move(coeffs));
}

// Conjugation by exp(g), g' = gamma t^{-k-1}: coefficients of P(d + g').
ScalarOperator gauge_exp(const ScalarOperator& op, const GaussianRational& gamma, long k) {
    long n = op.order();
    PuiseuxPoly w = PuiseuxPoly::monomial(gamma, -k - 1);
    std::vector<std::vector<PuiseuxPoly>> B(static_cast<std::size_t>(n) + 1);
    B[0] = {PuiseuxPoly::constant(GaussianRational(1))};
    for (long i = 1; i <= n; ++i) {
        auto& cur = B[static_cast<std::size_t>(i)];
        auto& prev = B[static_cast<std::size_t>(i - 1)];
        cur.assign(static_cast<std::size_t>(i) + 1, PuiseuxPoly());
        for (long r = 0; r <= i; ++r) {
            PuiseuxPoly v;
            if (r >= 1) v = v + prev[static_cast<std::size_t>(r - 1)];
            if (r <= i - 1)
                v = v + prev[static_cast<std::size_t>(r)].derivative() + w * prev[static_cast<std::size_t>(r)];
            cur[static_cast<std::size_t>(r)] = v;
        }
    }
    std::vector<PuiseuxPoly> coeffs(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) {
        if (op.a(i).is_zero()) continue;
        for (long r = 0; r <= i; ++r)
            coeffs[static_cast<std::size_t>(r)] =
                coeffs[static_cast<std::size_t>(r)] + op.a(i) * B[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
    }
    return ScalarOperator::make(std::move(coeffs));
}

ExponentialPart part_from_map(const std::map<Rational, GaussianRational>& lambda) {
    ExponentialPart part;
    long l = 1;
    for (const auto& [kappa, a] : lambda) {
        (void)a;
        l = std::lcm(l, static_cast<long>(denominator(kappa)));
    }
    part.l = l;
    for (const auto& [kappa, a] : lambda) {
        if (a.is_zero()) continue;
        Rational kl = kappa * l;
        part.terms.push_back({static_cast<long>(numerator(kl)), a});
    }
    return part;
}

void analyze_branch(const ScalarOperator& op, long ram, std::optional<Rational> cap,
                    const std::map<Rational, GaussianRational>& prefix,
                    std::vector<ExponentialPart>& out, int depth) {
    if (depth > 64) throw UnsupportedOperator("formal reduction recursion exceeded depth bound");
    Polygon pg = compute_polygon(op);
    std::vector<Edge> relevant;
    for (const auto& e : pg.edges)
        if (!cap || e.slope < *cap) relevant.push_back(e);

    long q = 1;
    for (const auto& e : relevant) q = std::lcm(q, static_cast<long>(denominator(e.slope)));
    if (q > 1) {
        std::optional<Rational> cap2 = cap ? std::optional<Rational>(*cap * q) : std::nullopt;
        analyze_branch(ramify_operator(op, q), ram * q, cap2, prefix, out, depth + 1);
        return;
    }

    if (!cap) {
        for (long t = 0; t < pg.i_star; ++t) out.push_back(part_from_map(prefix));
    } else {
        long total = pg.i_star;
        for (const auto& e : relevant) total += e.length();
        if (total != 1)
            throw UnsupportedOperator("formal reduction: branch does not separate (nonsimple data)");
        if (pg.i_star == 1) {
            out.push_back(part_from_map(prefix));
            return;
        }
    }

    for (const auto& e : relevant) {
        long k = static_cast<long>(numerator(e.slope));  // integer slope after ramification
        GPoly chi = edge_charpoly(op, e);
        // strip the gamma^{i_lo} factor is already handled: chi[0] = c_{i_lo} != 0
        std::vector<GaussianRational> roots = gaussian_roots(chi, "edge characteristic polynomial");
        if (static_cast<long>(roots.size()) != e.length())
            throw UnsupportedOperator("edge characteristic polynomial degenerated");
        for (const auto& gamma : roots) {
            if (gamma.is_zero())
                throw UnsupportedOperator("edge characteristic polynomial has zero root");
            ScalarOperator next = gauge_exp(op, gamma, k);
            std::map<Rational, GaussianRational> pfx = prefix;
            Rational kappa(k, ram);
            if (pfx.count(kappa)) throw UnsupportedOperator("duplicate exponent in branch prefix");
            pfx[kappa] = gamma / GaussianRational(Rational(k));
            analyze_branch(next, ram, Rational(k), pfx, out, depth + 1);
        }
    }
}

void sort_parts(std::vector<ExponentialPart>& parts) {
    std::stable_sort(parts.begin(), parts.end(), [](const ExponentialPart& x, const ExponentialPart& y) {
        if (x.is_zero() != y.is_zero()) return y.is_zero();  // nonzero first
        if (x.slope() != y.slope()) return x.slope() > y.slope();
        // lexicographic on term sequences
        std::size_t n = std::min(x.terms.size(), y.terms.size());
        for (std::size_t i = 0; i < n; ++i) {
            Rational kx(x.terms[i].k, x.l), ky(y.terms[i].k, y.l);
            if (kx != ky) return kx < ky;
            if (!(x.terms[i].a == y.terms[i].a)) return x.terms[i].a < y.terms[i].a;
        }
        return x.terms.size() < y.terms.size();
    });
}

FormalData finish(std::vector<ExponentialPart> parts) {
    sort_parts(parts);
    FormalData fd;
    fd.l = 1;
    for (const auto& p : parts) fd.l = std::lcm(fd.l, p.l);
    fd.parts = std::move(parts);
    return fd;
}

}  // namespace

std::vector<std::pair<Rational, long>> newton_polygon(const ScalarOperator& op) {
    Polygon pg = compute_polygon(op);
    std::vector<std::pair<Rational, long>> out;
    if (pg.i_star > 0) out.emplace_back(Rational(0), pg.i_star);
    for (const auto& e : pg.edges) out.emplace_back(e.slope, e.length());
    return out;
}

ExponentialPart exponential_part_from_terms(const std::map<Rational, GaussianRational>& lambda) {
    for (const auto& [kappa, a] : lambda) {
        (void)a;
        if (kappa <= 0) throw DomainError("exponential part exponents must be positive");
    }
    return part_from_map(lambda);
}

FormalData exponential_parts(const ScalarOperator& op) {
    std::vector<ExponentialPart> parts;
    analyze_branch(op, 1, std::nullopt, {}, parts, 0);
    if (static_cast<long>(parts.size()) != op.order())
        throw UnsupportedOperator("formal reduction lost solutions (internal accounting)");
    FormalData fd = finish(std::move(parts));
    fd.scalar_source = op;
    return fd;
}

FormalData exponential_parts(const SystemOperator& sys) {
    const long m = sys.m, N = sys.N;
    std::vector<ExponentialPart> parts;
    if (N == 1) {
        parts.assign(static_cast<std::size_t>(m), ExponentialPart{});
    } else {
        // M(z) = -z^{-N} A(z), truncated to orders <= -1; the splitting below
        // never lets higher orders feed back into the certified range.
        using LaurentMat = std::map<long, GMatrix>;
        const long trunc = -1;
        auto lm_mul = [&](const LaurentMat& a, const LaurentMat& b) {
            LaurentMat r;
            for (const auto& [pa, ma] : a)
                for (const auto& [pb, mb] : b) {
                    long p = pa + pb;
                    if (p > trunc) continue;
                    GMatrix prod = gmat_mul(ma, mb);
                    auto it = r.find(p);
                    if (it == r.end()) r.emplace(p, std::move(prod));
                    else it->second = gmat_add(it->second, prod);
                }
            return r;
        };

        GMatrix A0(static_cast<std::size_t>(m), std::vector<GaussianRational>(static_cast<std::size_t>(m)));
        LaurentMat M;
        for (long i = 0; i < m; ++i)
            for (long j = 0; j < m; ++j) {
                const PuiseuxPoly& e = sys.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                for (const auto& [d, c] : e.terms()) {
                    if (d == 0) A0[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c;
                    long p = d - N;
                    if (p > trunc) continue;
                    auto it = M.find(p);
                    if (it == M.end())
                        it = M.emplace(p, GMatrix(static_cast<std::size_t>(m),
                                                  std::vector<GaussianRational>(static_cast<std::size_t>(m))))
                                 .first;
                    it->second[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = -c;
                }
            }

        GPoly chi = gmat_charpoly(A0);
        std::vector<GaussianRational> eigs =
            gaussian_roots(chi, "eigenvalues of A(0)");
        if (static_cast<long>(eigs.size()) != m)
            throw UnsupportedOperator("A(0) does not have m distinct representable eigenvalues");

        GMatrix T(static_cast<std::size_t>(m), std::vector<GaussianRational>(static_cast<std::size_t>(m)));
        for (long j = 0; j < m; ++j) {
            GMatrix shifted = A0;
            for (long i = 0; i < m; ++i)
                shifted[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] -= eigs[static_cast<std::size_t>(j)];
            std::vector<GaussianRational> v = gmat_kernel_vector(shifted);
            for (long i = 0; i < m; ++i)
                T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(i)];
        }
        GMatrix Tinv = gmat_inverse(T);
        LaurentMat Mt;
        for (const auto& [p, mat] : M) Mt.emplace(p, gmat_mul(Tinv, gmat_mul(mat, T)));

        // Kill off-diagonal orders -N+1 .. -2 with gauges I + z^r Q.
        // After conjugation by T the leading order is exactly diag(-eigs);
        // no later gauge touches it.
        GMatrix D(static_cast<std::size_t>(m), std::vector<GaussianRational>(static_cast<std::size_t>(m)));
        for (long j = 0; j < m; ++j)
            D[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = -eigs[static_cast<std::size_t>(j)];
        for (long r = 1; r <= N - 2; ++r) {
            long ord = -N + r;
            auto it = Mt.find(ord);
            if (it == Mt.end()) continue;
            GMatrix Q(static_cast<std::size_t>(m), std::vector<GaussianRational>(static_cast<std::size_t>(m)));
            bool any = false;
            for (long a = 0; a < m; ++a)
                for (long b = 0; b < m; ++b) {
                    if (a == b) continue;
                    const GaussianRational& e = it->second[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                    if (e.is_zero()) continue;
                    GaussianRational den = D[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)] -
                                           D[static_cast<std::size_t>(b)][static_cast<std::size_t>(b)];
                    Q[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = -(e / den);
                    any = true;
                }
            if (!any) continue;
            // G = I + z^r Q, G^{-1} = sum (-z^r Q)^j ; the z^{r-1} derivative
            // term only feeds orders >= 0 and is dropped by the truncation.
            LaurentMat G, Ginv;
            G.emplace(0, gmat_identity(static_cast<std::size_t>(m)));
            G.emplace(r, Q);
            Ginv.emplace(0, gmat_identity(static_cast<std::size_t>(m)));
            GMatrix pw = Q;
            for (long j = 1; j * r <= trunc + 2 * N; ++j) {
                GMatrix signed_pw = (j % 2 == 1) ? gmat_scale(pw, GaussianRational(-1)) : pw;
                Ginv.emplace(j * r, signed_pw);
                pw = gmat_mul(pw, Q);
            }
            Mt = lm_mul(Ginv, lm_mul(Mt, G));
        }

        // Lambda_j from the diagonal entries of orders -N..-2.
        for (long j = 0; j < m; ++j) {
            std::map<Rational, GaussianRational> lambda;
            for (const auto& [p, mat] : Mt) {
                if (p > -2) continue;
                const GaussianRational& mu = mat[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
                if (mu.is_zero()) continue;
                long kappa = -(p + 1);
                lambda[Rational(kappa)] = mu / GaussianRational(Rational(kappa));
            }
            parts.push_back(part_from_map(lambda));
        }
    }
    FormalData fd = finish(std::move(parts));
    fd.system_source = sys;
    return fd;
}

Classification classify_singularity(const FormalData& fd) {
    Classification c;
    c.regular = !fd.has_nonzero_part();
    std::vector<Rational> slopes;
    for (const auto& p : fd.parts)
        if (!p.is_zero()) slopes.push_back(p.slope());
    std::sort(slopes.begin(), slopes.end());
    slopes.erase(std::unique(slopes.begin(), slopes.end()), slopes.end());
    c.positive_slopes = std::move(slopes);
    return c;
}

}  // namespace stokes
