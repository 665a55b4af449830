#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stokes/oracle.hpp"

using namespace stokes;

namespace {
constexpr double PI = 3.141592653589793238462643383279502884;
}

TEST_CASE("integrate_ray matches closed forms") {
    // z^2 d + 1: u = exp(1/z), log|u| = cos(theta)/rho + const
    SystemOperator s1 = companion_system(parse_operator("z^2*d+1"));
    RayTrace t1 = integrate_ray(s1, PI / 8, 0.5, 0.01, 1e-12, 50);
    REQUIRE(t1.samples.size() >= 20);
    double c = std::cos(PI / 8);
    // differences remove the constant
    const auto& first = t1.samples.front();
    for (const auto& s : t1.samples) {
        double expect = c / s.rho - c / first.rho;
        double got = s.log_norm[0] - first.log_norm[0];
        CHECK(std::fabs(got - expect) <= 1e-6 * std::max(1.0, std::fabs(expect)));
    }

    // z d + 2: u = z^{-2}: log|u| = 2 log(1/rho) + const
    SystemOperator s2 = companion_system(parse_operator("z*d+2"));
    RayTrace t2 = integrate_ray(s2, 0.0, 0.5, 0.01, 1e-12, 50);
    const auto& f2 = t2.samples.front();
    for (const auto& s : t2.samples) {
        double expect = 2 * std::log(f2.rho / s.rho);
        CHECK(std::fabs((s.log_norm[0] - f2.log_norm[0]) - expect) < 1e-8);
    }

    // z^3 d + 1: u = exp(1/(2 z^2)): log|u| = cos(2 theta)/(2 rho^2) + const
    SystemOperator s3 = companion_system(parse_operator("z^3*d+1"));
    RayTrace t3 = integrate_ray(s3, 0.0, 0.5, 0.01, 1e-12, 50);
    const auto& f3 = t3.samples.front();
    for (const auto& s : t3.samples) {
        double expect = 1.0 / (2 * s.rho * s.rho) - 1.0 / (2 * f3.rho * f3.rho);
        CHECK(std::fabs((s.log_norm[0] - f3.log_norm[0]) - expect) <=
              1e-6 * std::max(1.0, std::fabs(expect)));
    }
}

TEST_CASE("tolerance halving convergence") {
    SystemOperator sys = companion_system(parse_operator("z^2*d+1"));
    RayTrace a = integrate_ray(sys, PI / 16, 0.5, 0.02, 1e-8, 50);
    RayTrace b = integrate_ray(sys, PI / 16, 0.5, 0.02, 5e-9, 50);
    double la = a.samples.back().log_norm[0];
    double lb = b.samples.back().log_norm[0];
    CHECK(std::fabs(la - lb) <= 10 * 1e-8);
}

TEST_CASE("reversibility: outward then inward composes to identity") {
    SystemOperator sys = companion_system(parse_operator("z^4*d^2+2*z^3*d-1"));
    double th = PI / 16;
    RayTrace in = integrate_ray(sys, th, 0.5, 0.1, 1e-14, 50);
    RayTrace out = integrate_ray(sys, th, 0.1, 0.5, 1e-14, 50);
    // P_out * P_in with the log factors folded back in; composed at full
    // precision since the factors reach e^{+-8}.
    ScopedPrecision prec(digits_to_bits(50));
    std::size_t m = 2;
    std::vector<std::vector<Complex>> A(m, std::vector<Complex>(m, Complex(Real(0L), Real(0L))));
    std::vector<std::vector<Complex>> B = A;
    for (std::size_t j = 0; j < m; ++j) {
        Real fa = exp(in.final_logfac[j]);
        Real fb = exp(out.final_logfac[j]);
        for (std::size_t i = 0; i < m; ++i) {
            A[j][i] = Complex(in.final_matrix[j][i].re * fa, in.final_matrix[j][i].im * fa);
            B[j][i] = Complex(out.final_matrix[j][i].re * fb, out.final_matrix[j][i].im * fb);
        }
    }
    // identity = B_matrix * A_matrix (stored column-major)
    for (std::size_t col = 0; col < m; ++col)
        for (std::size_t row = 0; row < m; ++row) {
            Complex acc(Real(0L), Real(0L));
            for (std::size_t k = 0; k < m; ++k) acc += B[k][row] * A[col][k];
            double expect = (row == col) ? 1.0 : 0.0;
            CHECK(std::abs(acc.re.to_double() - expect) < 1e-8);
            CHECK(std::abs(acc.im.to_double()) < 1e-8);
        }
}

TEST_CASE("fit_growth closed forms") {
    SystemOperator s1 = companion_system(parse_operator("z^2*d+1"));
    RayTrace t1 = integrate_ray(s1, PI / 8, 0.5, 0.005, 1e-10, 50);
    auto f1 = fit_growth(t1, 1);
    REQUIRE(f1.size() == 1);
    CHECK_FALSE(f1[0].degenerate);
    CHECK(std::fabs(f1[0].exponent - 1.0) < 0.05);
    CHECK(std::fabs(f1[0].coefficient - std::cos(PI / 8)) < 0.05);

    SystemOperator s2 = companion_system(parse_operator("z*d+2"));
    RayTrace t2 = integrate_ray(s2, 0.0, 0.5, 0.005, 1e-10, 50);
    auto f2 = fit_growth(t2, 1);
    CHECK(f2[0].degenerate);
    CHECK(f2[0].exponent == 0.0);

    SystemOperator s3 = companion_system(parse_operator("z^3*d+1"));
    RayTrace t3 = integrate_ray(s3, 0.0, 0.5, 0.005, 1e-10, 50);
    auto f3 = fit_growth(t3, 1);
    CHECK(std::fabs(f3[0].exponent - 2.0) < 0.1);
    CHECK(std::fabs(f3[0].coefficient - 0.5) < 0.05);
}

TEST_CASE("crosscheck: exponential example and composed operator") {
    FormalData fd = exponential_parts(parse_operator("z^2*d+1"));
    SectorCertificate cert = select_sector(fd);
    CrosscheckReport rep = crosscheck(fd, &cert, {PI / 16, PI / 8}, 1e-10, 50);
    CHECK(rep.pass);
    for (const auto& rc : rep.rays) {
        CHECK(rc.pass);
        CHECK(rc.expected_exponent == 1.0);
        CHECK(rc.expected_sign > 0);
    }

    FormalData fd2 = exponential_parts(parse_operator("z^4*d^2+2*z^3*d-1"));
    SectorCertificate cert2 = select_sector(fd2);
    CrosscheckReport rep2 = crosscheck(fd2, &cert2, default_rays(&cert2, 2), 1e-9, 50);
    CHECK(rep2.pass);
    for (const auto& rc : rep2.rays) CHECK(std::fabs(rc.expected_exponent - 1.0) < 1e-12);
}

TEST_CASE("crosscheck: regular operator") {
    FormalData fd = exponential_parts(parse_operator("z*d+3"));
    CrosscheckReport rep = crosscheck(fd, nullptr, default_rays(nullptr, 2), 1e-10, 50);
    CHECK(rep.pass);
    for (const auto& rc : rep.rays)
        for (const auto& f : rc.fits) CHECK(f.degenerate);
}

namespace {

// Test-only oracle: fixed-step RK4 on the scalar equation in monic form,
// entirely independent of the Taylor stepper and of companion_system.
std::complex<double> rk4_scalar_solution(const ScalarOperator& op, double theta, double rho_hi,
                                         double rho_lo, long steps) {
    long n = op.order();
    auto eval_poly = [&](const PuiseuxPoly& p, std::complex<double> z) {
        std::complex<double> acc = 0;
        for (const auto& [k, c] : p.terms()) {
            std::complex<double> cz(c.re.convert_to<double>(), c.im.convert_to<double>());
            acc += cz * std::pow(z, static_cast<double>(k));
        }
        return acc;
    };
    // state y = (u, u', ..., u^{(n-1)}); dy/dz from the monic form
    auto rhs = [&](std::complex<double> z, const std::vector<std::complex<double>>& y) {
        std::vector<std::complex<double>> dy(static_cast<std::size_t>(n));
        for (long i = 0; i + 1 < n; ++i) dy[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i + 1)];
        std::complex<double> top = 0;
        std::complex<double> an = eval_poly(op.a(n), z);
        for (long i = 0; i < n; ++i) top -= eval_poly(op.a(i), z) * y[static_cast<std::size_t>(i)];
        dy[static_cast<std::size_t>(n - 1)] = top / an;
        return dy;
    };
    std::complex<double> dir = std::polar(1.0, theta);
    std::complex<double> z = rho_hi * dir;
    std::complex<double> dz = -dir * ((rho_hi - rho_lo) / static_cast<double>(steps));
    std::vector<std::complex<double>> y(static_cast<std::size_t>(n), 0.0);
    y[0] = 1.0;  // u = 1, derivatives 0
    auto axpy = [&](const std::vector<std::complex<double>>& base,
                    const std::vector<std::complex<double>>& k, std::complex<double> s) {
        std::vector<std::complex<double>> r(base.size());
        for (std::size_t i = 0; i < base.size(); ++i) r[i] = base[i] + s * k[i];
        return r;
    };
    for (long s = 0; s < steps; ++s) {
        auto k1 = rhs(z, y);
        auto k2 = rhs(z + 0.5 * dz, axpy(y, k1, 0.5 * dz));
        auto k3 = rhs(z + 0.5 * dz, axpy(y, k2, 0.5 * dz));
        auto k4 = rhs(z + dz, axpy(y, k3, dz));
        for (std::size_t i = 0; i < y.size(); ++i)
            y[i] += dz / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        z += dz;
    }
    return y[0];
}

}  // namespace

TEST_CASE("scalar and companion forms integrate to the same first component") {
    // The companion contract: u solves P u = 0 iff (u, u', ...) solves the
    // system. Drive the system through the production oracle from the
    // identity column e_1 = (u, u')(z0) = (1, 0) and the scalar form through
    // an independent RK4; first components must agree along the ray.
    for (const char* src : {"z^4*d^2+2*z^3*d-1", "z^2*d+1", "z^3*d^3+z^2*d^2+z*d+1/2",
                            "z^3*d+(1+1i)", "z^2*d^2+z*d+1"}) {
        ScalarOperator op = parse_operator(src);
        SystemOperator sys = companion_system(op);
        double theta = PI / 16, rho_hi = 0.5;
        for (double rho_lo : {0.3, 0.2, 0.1}) {
            RayTrace t = integrate_ray(sys, theta, rho_hi, rho_lo, 1e-13, 60);
            // reconstruct the first entry of column 0
            std::complex<double> w0(t.final_matrix[0][0].re.to_double(),
                                    t.final_matrix[0][0].im.to_double());
            w0 *= std::exp(t.final_logfac[0].to_double());
            std::complex<double> u = rk4_scalar_solution(op, theta, rho_hi, rho_lo, 300000);
            CHECK(std::abs(w0 - u) <= 1e-8 * std::abs(u));
        }
    }
}

TEST_CASE("precision guard") {
    SystemOperator sys = companion_system(parse_operator("z^2*d+1"));
    CHECK_THROWS_AS(integrate_ray(sys, 0.1, 0.5, 0.1, 1e-60, 50), PrecisionExhausted);
}
