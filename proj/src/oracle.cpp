#include "stokes/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stokes {

namespace {

struct TaylorStepper {
    long m;
    long N;
    long P;  // series order
    std::vector<std::pair<long, std::vector<std::vector<Complex>>>> A_coeffs;  // (degree, matrix)
    long degA = 0;

    explicit TaylorStepper(const SystemOperator& sys, long order) : m(sys.m), N(sys.N), P(order) {
        std::map<long, std::vector<std::vector<Complex>>> by_degree;
        for (long i = 0; i < m; ++i)
            for (long j = 0; j < m; ++j)
                for (const auto& [d, c] : sys.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].terms()) {
                    auto it = by_degree.find(d);
                    if (it == by_degree.end())
                        it = by_degree
                                 .emplace(d, std::vector<std::vector<Complex>>(
                                                 static_cast<std::size_t>(m),
                                                 std::vector<Complex>(static_cast<std::size_t>(m),
                                                                      Complex(Real(0L), Real(0L)))))
                                 .first;
                    it->second[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Complex(c);
                }
        for (auto& [d, mat] : by_degree) {
            degA = std::max(degA, d);
            A_coeffs.emplace_back(d, std::move(mat));
        }
    }

    // Taylor coefficients M_s of -(z0+zeta)^{-N} A(z0+zeta), s = 0..P-1.
    std::vector<std::vector<std::vector<Complex>>> series_at(const Complex& z0) const {
        std::size_t mm = static_cast<std::size_t>(m);
        // (z0+zeta)^{-N} coefficients
        std::vector<Complex> neg(static_cast<std::size_t>(P), Complex(Real(0L), Real(0L)));
        Complex zinv = Complex(Real(1L), Real(0L)) / z0;
        Complex p = zinv;
        for (long i = 1; i < N; ++i) p = p * zinv;  // z0^{-N}
        neg[0] = p;
        for (long s = 0; s + 1 < P; ++s)
            neg[static_cast<std::size_t>(s + 1)] =
                neg[static_cast<std::size_t>(s)] * zinv *
                Complex(Real(static_cast<long>(-N - s)) / Real(static_cast<long>(s + 1)), Real(0L));
        // A(z0+zeta) coefficients: sum_d A_d * C(d,s) z0^{d-s}
        std::vector<std::vector<std::vector<Complex>>> B(
            static_cast<std::size_t>(P),
            std::vector<std::vector<Complex>>(mm, std::vector<Complex>(mm, Complex(Real(0L), Real(0L)))));
        std::vector<Complex> z0pow(static_cast<std::size_t>(degA) + 1, Complex(Real(1L), Real(0L)));
        for (long d = 1; d <= degA; ++d)
            z0pow[static_cast<std::size_t>(d)] = z0pow[static_cast<std::size_t>(d - 1)] * z0;
        for (const auto& [d, mat] : A_coeffs) {
            double binom = 1.0;
            for (long s = 0; s <= std::min(d, P - 1); ++s) {
                if (s > 0) binom = binom * static_cast<double>(d - s + 1) / static_cast<double>(s);
                Complex factor = z0pow[static_cast<std::size_t>(d - s)] * Complex(Real(binom), Real(0L));
                for (std::size_t i = 0; i < mm; ++i)
                    for (std::size_t j = 0; j < mm; ++j) {
                        const Complex& a = mat[i][j];
                        if (a.re.is_zero() && a.im.is_zero()) continue;
                        B[static_cast<std::size_t>(s)][i][j] += a * factor;
                    }
            }
        }
        // M_s = -(neg * B)_s
        std::vector<std::vector<std::vector<Complex>>> M(
            static_cast<std::size_t>(P),
            std::vector<std::vector<Complex>>(mm, std::vector<Complex>(mm, Complex(Real(0L), Real(0L)))));
        for (long s = 0; s < P; ++s)
            for (long t = 0; t <= s; ++t) {
                const auto& Bt = B[static_cast<std::size_t>(t)];
                const Complex& nf = neg[static_cast<std::size_t>(s - t)];
                for (std::size_t i = 0; i < mm; ++i)
                    for (std::size_t j = 0; j < mm; ++j) {
                        const Complex& b = Bt[i][j];
                        if (b.re.is_zero() && b.im.is_zero()) continue;
                        M[static_cast<std::size_t>(s)][i][j] += -(b * nf);
                    }
            }
        return M;
    }
};

double sup_norm_d(const std::vector<Complex>& col) {
    double n = 0;
    for (const auto& c : col)
        n = std::max(n, std::max(std::fabs(c.re.to_double()), std::fabs(c.im.to_double())));
    return n;
}

}  // namespace

RayTrace integrate_ray(const SystemOperator& sys, double theta, double rho_hi, double rho_lo,
                       double tol, long precision_digits) {
    if (!(rho_hi > 0 && rho_lo > 0) || rho_hi == rho_lo)
        throw DomainError("integration endpoints must be positive and distinct");
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
    if (tol < std::pow(10.0, -static_cast<double>(precision_digits - 6)))
        throw PrecisionExhausted("tolerance below the working precision floor");
    ScopedPrecision prec(digits_to_bits(precision_digits));

    const bool inward = rho_lo < rho_hi;
    const long P = 32;
    TaylorStepper stepper(sys, P);
    std::size_t mm = static_cast<std::size_t>(sys.m);

    Real cth = cos(Real(theta)), sth = sin(Real(theta));
    auto at_rho = [&](const Real& rho) { return Complex(rho * cth, rho * sth); };

    // columns of the fundamental matrix, renormalized
    std::vector<std::vector<Complex>> W(mm, std::vector<Complex>(mm, Complex(Real(0L), Real(0L))));
    for (std::size_t j = 0; j < mm; ++j) W[j][j] = Complex(Real(1L), Real(0L));
    std::vector<Real> logfac(mm, Real(0L));

    RayTrace trace;
    trace.theta = theta;
    trace.m = sys.m;

    const double samples_per_decade = 24.0;
    double next_sample = rho_hi;
    double sample_ratio = std::pow(10.0, (inward ? -1.0 : 1.0) / samples_per_decade);

    auto col_norm = [](const std::vector<Complex>& col) {
        Real acc(0L);
        for (const auto& e : col) acc += e.re * e.re + e.im * e.im;
        return sqrt(acc);
    };
    auto record = [&](double rho) {
        RayTrace::Sample s;
        s.rho = rho;
        for (std::size_t j = 0; j < mm; ++j)
            s.log_norm.push_back((logfac[j] + log(col_norm(W[j]))).to_double());
        trace.samples.push_back(std::move(s));
    };

    double rho = rho_hi;
    record(rho);
    next_sample = rho_hi * sample_ratio;

    long safety_steps = 0;
    while (inward ? rho > rho_lo : rho < rho_lo) {
        Real rho_r(rho);
        Complex z0 = at_rho(rho_r);
        auto M = stepper.series_at(z0);

        // Taylor coefficients of all columns simultaneously.
        std::vector<std::vector<std::vector<Complex>>> C(
            static_cast<std::size_t>(P) + 1,
            std::vector<std::vector<Complex>>(mm, std::vector<Complex>(mm, Complex(Real(0L), Real(0L)))));
        C[0] = W;
        for (long r = 0; r < P; ++r) {
            Real inv = Real(1L) / Real(r + 1);
            for (long s = 0; s <= r; ++s) {
                const auto& Ms = M[static_cast<std::size_t>(s)];
                const auto& Cr = C[static_cast<std::size_t>(r - s)];
                auto& Cn = C[static_cast<std::size_t>(r + 1)];
                for (std::size_t j = 0; j < mm; ++j)
                    for (std::size_t i = 0; i < mm; ++i) {
                        Complex acc(Real(0L), Real(0L));
                        for (std::size_t k = 0; k < mm; ++k) acc += Ms[i][k] * Cr[j][k];
                        Cn[j][i] += acc;
                    }
            }
            for (std::size_t j = 0; j < mm; ++j)
                for (std::size_t i = 0; i < mm; ++i) {
                    C[static_cast<std::size_t>(r + 1)][j][i].re *= inv;
                    C[static_cast<std::size_t>(r + 1)][j][i].im *= inv;
                }
        }

        // Step size from the series tail against the current column scale.
        double scale = 0;
        for (std::size_t j = 0; j < mm; ++j) scale = std::max(scale, sup_norm_d(C[0][j]));
        double h = 0.40 * rho;
        for (long r = P - 2; r <= P; ++r) {
            double tail = 0;
            for (std::size_t j = 0; j < mm; ++j)
                tail = std::max(tail, sup_norm_d(C[static_cast<std::size_t>(r)][j]));
            if (tail > 0) {
                double cand = std::pow(tol * scale / tail, 1.0 / static_cast<double>(r));
                h = std::min(h, cand);
            }
        }
        double remaining = std::fabs(rho_lo - rho);
        bool last = h >= remaining;
        if (last) h = remaining;
        if (h < rho * 1e-18) throw StepSizeUnderflow("step size underflow", rho);
        if (++safety_steps > 100000000L) throw StepSizeUnderflow("step budget exhausted", rho);

        // zeta = (+-h) e^{i theta}
        Real h_r(h);
        Complex zeta(inward ? -(h_r * cth) : h_r * cth, inward ? -(h_r * sth) : h_r * sth);
        std::vector<std::vector<Complex>> Wn(mm, std::vector<Complex>(mm, Complex(Real(0L), Real(0L))));
        for (std::size_t j = 0; j < mm; ++j)
            for (std::size_t i = 0; i < mm; ++i) {
                Complex acc = C[static_cast<std::size_t>(P)][j][i];
                for (long r = P - 1; r >= 0; --r)
                    acc = acc * zeta + C[static_cast<std::size_t>(r)][j][i];
                Wn[j][i] = acc;
            }
        // renormalize columns
        for (std::size_t j = 0; j < mm; ++j) {
            Real nrm = col_norm(Wn[j]);
            if (nrm.is_zero()) throw StepSizeUnderflow("degenerate column", rho);
            Real inv = Real(1L) / nrm;
            for (auto& e : Wn[j]) {
                e.re *= inv;
                e.im *= inv;
            }
            logfac[j] += log(nrm);
        }
        W = std::move(Wn);
        rho = inward ? rho - h : rho + h;

        bool crossed = false;
        while ((inward && rho <= next_sample && next_sample > rho_lo) ||
               (!inward && rho >= next_sample && next_sample < rho_lo)) {
            crossed = true;
            next_sample *= sample_ratio;
        }
        if (crossed && !last) record(rho);
        if (last) break;
    }
    if (trace.samples.empty() || trace.samples.back().rho != rho) record(rho);
    trace.rho_reached = rho;
    trace.final_matrix = std::move(W);
    trace.final_logfac = std::move(logfac);
    return trace;
}

std::vector<GrowthFit> fit_growth(const RayTrace& trace, long l) {
    if (trace.samples.size() < 8) throw DomainError("trace has too few samples to fit");
    double rho_hi = trace.samples.front().rho, rho_lo = trace.samples.back().rho;
    if (rho_hi / rho_lo < 30.0)
        throw DomainError("trace span too small for a growth fit (need >= 1.5 decades)");

    std::vector<GrowthFit> fits;
    for (long j = 0; j < trace.m; ++j) {
        GrowthFit f;
        // deepest decade window
        std::vector<std::pair<double, double>> pts;  // (log(1/rho), L)
        for (const auto& s : trace.samples)
            if (s.rho <= rho_lo * 10.0)
                pts.emplace_back(std::log(1.0 / s.rho), s.log_norm[static_cast<std::size_t>(j)]);
        double L_deep = pts.back().second;
        if (std::fabs(L_deep) < 3.0) {
            f.degenerate = true;
            fits.push_back(f);
            continue;
        }
        // stage 1: slope of log|L| vs log(1/rho)
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        long n = 0;
        for (auto& [x, L] : pts) {
            if (std::fabs(L) < 1e-12) continue;
            double y = std::log(std::fabs(L));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
        if (n < 5) {
            f.degenerate = true;
            fits.push_back(f);
            continue;
        }
        double slope = (static_cast<double>(n) * sxy - sx * sy) /
                       (static_cast<double>(n) * sxx - sx * sx);
        if (slope < 0.5 / static_cast<double>(l)) {
            f.degenerate = true;
            f.residual = 0;
            fits.push_back(f);
            continue;
        }
        // stage 2: refine on a grid, fitting L ~ c rho^{-n} + q log(1/rho) + b
        double best_n = slope, best_rss = 1e300, best_c = 0;
        for (double nn = slope * 0.7; nn <= slope * 1.35; nn += slope * 0.01) {
            // least squares in (c, q, b)
            double a11 = 0, a12 = 0, a13 = 0, a22 = 0, a23 = 0, a33 = 0;
            double b1 = 0, b2 = 0, b3 = 0;
            for (auto& [x, L] : pts) {
                double u = std::exp(nn * x);  // rho^{-n}
                double v = x;
                a11 += u * u;
                a12 += u * v;
                a13 += u;
                a22 += v * v;
                a23 += v;
                a33 += 1;
                b1 += u * L;
                b2 += v * L;
                b3 += L;
            }
            // solve the 3x3 normal system by Cramer
            double det = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) +
                         a13 * (a12 * a23 - a22 * a13);
            if (std::fabs(det) < 1e-280) continue;
            double c = (b1 * (a22 * a33 - a23 * a23) - a12 * (b2 * a33 - a23 * b3) +
                        a13 * (b2 * a23 - a22 * b3)) /
                       det;
            double q = (a11 * (b2 * a33 - b3 * a23) - b1 * (a12 * a33 - a23 * a13) +
                        a13 * (a12 * b3 - b2 * a13)) /
                       det;
            double bconst = (a11 * (a22 * b3 - a23 * b2) - a12 * (a12 * b3 - b2 * a13) +
                             b1 * (a12 * a23 - a22 * a13)) /
                            det;
            double rss = 0;
            for (auto& [x, L] : pts) {
                double r = L - (c * std::exp(nn * x) + q * x + bconst);
                rss += r * r;
            }
            if (rss < best_rss) {
                best_rss = rss;
                best_n = nn;
                best_c = c;
            }
        }
        f.exponent = best_n;
        f.coefficient = best_c;
        f.residual = std::sqrt(best_rss / static_cast<double>(pts.size()));
        fits.push_back(f);
    }
    return fits;
}

std::vector<double> default_rays(const SectorCertificate* cert, int count) {
    std::vector<double> rays;
    double t0 = 0, t1 = 3.141592653589793 / 4;
    if (cert) {
        t0 = cert->theta0_pi.convert_to<double>() * 3.141592653589793;
        t1 = cert->theta1_pi.convert_to<double>() * 3.141592653589793;
    }
    for (int i = 1; i <= count; ++i)
        rays.push_back(t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(count + 1));
    return rays;
}

CrosscheckReport crosscheck(const FormalData& fd, const SectorCertificate* cert,
                            const std::vector<double>& rays, double tol, long precision_digits) {
    CrosscheckReport rep;
    rep.tol = tol;
    rep.precision_digits = precision_digits;

    SystemOperator sys;
    if (fd.system_source) sys = *fd.system_source;
    else if (fd.scalar_source) sys = companion_system(*fd.scalar_source);
    else throw DomainError("formal data carries no operator source");

    if (cert) {
        double t0 = cert->theta0_pi.convert_to<double>() * 3.141592653589793;
        double t1 = cert->theta1_pi.convert_to<double>() * 3.141592653589793;
        for (double theta : rays)
            if (theta < t0 - 1e-12 || theta > t1 + 1e-12)
                throw DomainError("ray direction outside the certified sector");
    }

    // Depth heuristic: enough decades for the fit, shallower when the pole
    // order makes deep integration expensive.
    rep.rho_hi = 0.5;
    if (sys.N <= 2) rep.rho_lo = 0.005;
    else if (sys.N == 3) rep.rho_lo = 0.005;
    else rep.rho_lo = 0.01;

    // symbolic per-part data
    struct PartInfo {
        bool zero;
        double slope;
        double alpha;
        double phi;
    };
    std::vector<PartInfo> info;
    for (const auto& p : fd.parts) {
        if (p.is_zero()) {
            info.push_back({true, 0, 0, 0});
            continue;
        }
        PartInfo pi;
        pi.zero = false;
        pi.slope = p.slope().convert_to<double>();
        pi.alpha = p.alpha(p.n_lead()).mid_double();
        pi.phi = p.phi(p.n_lead()).enclosure().mid_double();
        info.push_back(pi);
    }

    bool all_pass = true;
    for (double theta : rays) {
        RayCheck rc;
        rc.theta = theta;
        RayTrace trace = integrate_ray(sys, theta, rep.rho_hi, rep.rho_lo, tol, precision_digits);
        rc.fits = fit_growth(trace, fd.l);

        double max_growing = 0;
        bool any_growing = false;
        double max_rate = -1e300;
        bool any_nonzero = false;
        for (const auto& pi : info) {
            if (pi.zero) continue;
            any_nonzero = true;
            double rate = pi.alpha * std::cos(pi.phi - pi.slope * theta);
            max_rate = std::max(max_rate, rate);
            if (rate > 1e-9) {
                any_growing = true;
                max_growing = std::max(max_growing, pi.slope);
            }
        }

        bool pass = true;
        std::ostringstream note;
        if (!any_nonzero) {
            // regular operator: every column must look moderate
            for (const auto& f : rc.fits)
                if (!f.degenerate) {
                    pass = false;
                    note << "regular operator shows exponential growth; ";
                }
            rc.expected_exponent = 0;
            rc.expected_sign = 0;
        } else {
            // dominant column = largest |L| at depth
            const auto& deep = trace.samples.back();
            std::size_t dom = 0;
            for (std::size_t j = 1; j < deep.log_norm.size(); ++j)
                if (std::fabs(deep.log_norm[j]) > std::fabs(deep.log_norm[dom])) dom = j;
            const GrowthFit& df = rc.fits[dom];
            rc.expected_sign = max_rate >= 0 ? 1.0 : -1.0;
            if (any_growing) {
                rc.expected_exponent = max_growing;
                if (df.degenerate ||
                    std::fabs(df.exponent - max_growing) > 0.10 * std::fabs(max_growing)) {
                    pass = false;
                    note << "dominant exponent " << (df.degenerate ? 0.0 : df.exponent)
                         << " vs expected " << max_growing << "; ";
                }
            }
            if (!df.degenerate) {
                double got_sign = df.coefficient >= 0 ? 1.0 : -1.0;
                if (got_sign != rc.expected_sign) {
                    pass = false;
                    note << "dominant coefficient sign mismatch; ";
                }
            } else if (any_growing) {
                pass = false;
                note << "degenerate fit on a growing ray; ";
            }
            if (fd.m() == 1 && !info[0].zero) {
                double expect_c = info[0].alpha * std::cos(info[0].phi - info[0].slope * theta);
                const GrowthFit& f0 = rc.fits[0];
                if (f0.degenerate || std::fabs(f0.exponent - info[0].slope) > 0.10 * info[0].slope ||
                    std::fabs(f0.coefficient - expect_c) > 0.10 * std::fabs(expect_c)) {
                    pass = false;
                    note << "m=1 part mismatch; ";
                }
            }
        }
        rc.pass = pass;
        rc.note = note.str();
        all_pass = all_pass && pass;
        rep.rays.push_back(std::move(rc));
    }
    rep.pass = all_pass;
    return rep;
}

}  // namespace stokes
