#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stokes/temperance.hpp"

using namespace stokes;

namespace {

struct RefSetup {
    FormalData fd;
    SectorCertificate cert;
    Region S;  // S(0, pi/4, 1/2)
};

RefSetup reference_setup() {
    RefSetup s;
    s.fd = exponential_parts(parse_operator("z^2*d+1"));
    s.cert = select_sector(s.fd);
    s.S = Region::sector(Rational(0), Rational(1, 4), Rational(1, 2));
    return s;
}

}  // namespace

TEST_CASE("region membership") {
    Region S = Region::sector(Rational(0), Rational(1, 4), Rational(1));
    CHECK(S.contains_point(Rational(1, 2), Rational(1, 10)));
    CHECK_FALSE(S.contains_point(Rational(1, 2), Rational(-1, 10)));  // below
    CHECK_FALSE(S.contains_point(Rational(1, 10), Rational(1, 2)));   // above pi/4
    CHECK_FALSE(S.contains_point(Rational(1, 2), Rational(1, 2)));    // on the pi/4 edge
    CHECK_FALSE(S.contains_point(Rational(1, 2), Rational(0)));       // on the 0 edge
    CHECK_FALSE(S.contains_point(Rational(2), Rational(1)));          // outside radius
    CHECK_FALSE(S.contains_point(Rational(0), Rational(0)));

    Region Sd = S.truncated(Rational(1, 10));
    CHECK(Sd.contains_point(Rational(1, 2), Rational(1, 10)));
    CHECK_FALSE(Sd.contains_point(Rational(1, 20), Rational(1, 100)));

    Region U = S.minus_disk(GaussianRational(Rational(1, 5)), Rational(1, 5));
    CHECK(U.contains_point(Rational(1, 2), Rational(1, 10)));
    CHECK_FALSE(U.contains_point(Rational(1, 5), Rational(1, 100)));

    // wrapped sector: theta in (7pi/4, 9pi/4) contains direction 0 = 2pi
    Region W = Region::sector(Rational(7, 4), Rational(9, 4), Rational(1));
    CHECK(W.contains_point(Rational(1, 2), Rational(0)));
    CHECK(W.contains_point(Rational(1, 2), Rational(1, 10)));
    CHECK(W.contains_point(Rational(1, 2), Rational(-1, 10)));
    CHECK_FALSE(W.contains_point(Rational(0), Rational(1, 2)));
}

TEST_CASE("inf_modulus closed forms") {
    Region S = Region::sector(Rational(0), Rational(1, 4), Rational(1));
    InfModulus a = inf_modulus(S);
    CHECK(a.bound == 0);
    CHECK(a.touches_zero);

    InfModulus b = inf_modulus(S.truncated(Rational(1, 10)));
    CHECK(b.bound == Rational(1, 10));
    CHECK_FALSE(b.touches_zero);

    // U_eps within the x>y>0 sector: bound = eps (outside the tangent ball forces x > eps)
    InfModulus c = inf_modulus(S.minus_disk(GaussianRational(Rational(1, 5)), Rational(1, 5)));
    CHECK(c.bound == Rational(1, 5));
    CHECK_FALSE(c.touches_zero);

    // origin strictly inside the excluded disk
    InfModulus d = inf_modulus(S.minus_disk(GaussianRational(Rational(1, 10)), Rational(1, 2)));
    CHECK(d.bound > 0);
    CHECK_FALSE(d.touches_zero);

    // tangent disk whose escape arc meets the sector: still touches zero
    Region wide = Region::sector(Rational(0), Rational(3, 2), Rational(1));
    InfModulus e = inf_modulus(wide.minus_disk(GaussianRational(Rational(1, 5)), Rational(1, 5)));
    CHECK(e.bound == 0);
    CHECK(e.touches_zero);
}

TEST_CASE("temperance verdicts: exponential example") {
    RefSetup s = reference_setup();
    const ExponentialPart& part = s.fd.parts[0];

    TemperanceVerdict on_S = is_tempered_exp(part, s.S, s.cert);
    CHECK(on_S.kind == TemperanceVerdict::Kind::NotTempered);
    CHECK(*on_S.direction_pi == Rational(1, 8));

    TemperanceVerdict on_Sd = is_tempered_exp(part, s.S.truncated(Rational(1, 10)), s.cert);
    CHECK(on_Sd.kind == TemperanceVerdict::Kind::Tempered);
    // A ~ cos(0)/delta = 10
    CHECK(*on_Sd.bound_A >= 10);
    CHECK(*on_Sd.bound_A <= 11);

    // exp(-1/z): Lambda = +z^{-1}, decaying on the sector
    std::map<Rational, GaussianRational> t;
    t[Rational(1)] = GaussianRational(1);
    ExponentialPart decaying = exponential_part_from_terms(t);
    // build a certificate containing both parts for the radius data
    FormalData both = exponential_parts(parse_operator("z^4*d^2+2*z^3*d-1"));
    SectorCertificate cert2 = select_sector(both);
    Region S2 = Region::sector(cert2.theta0_pi, cert2.theta1_pi, Rational(1, 2));
    TemperanceVerdict neg = is_tempered_exp(decaying, S2, cert2);
    CHECK(neg.kind == TemperanceVerdict::Kind::Tempered);
    CHECK(*neg.bound_A == 0);
}

TEST_CASE("tempered_count: reference region values") {
    RefSetup s = reference_setup();
    TemperedCount on_S = tempered_count(s.fd, s.cert, s.S);
    CHECK(on_S.n == 0);
    CHECK(on_S.J_V.empty());

    for (long den : {10L, 100L, 1000L}) {
        TemperedCount on_Sd = tempered_count(s.fd, s.cert, s.S.truncated(Rational(1, den)));
        CHECK(on_Sd.n == 1);
        REQUIRE(on_Sd.J_V.size() == 1);
        CHECK(on_Sd.J_V[0] == 1);
    }
}

TEST_CASE("tempered_count: composed operator") {
    FormalData fd = exponential_parts(parse_operator("z^4*d^2+2*z^3*d-1"));
    SectorCertificate cert = select_sector(fd);
    // sub-sector of (0, pi/4) touching zero: only the decaying part survives
    Region V = Region::sector(cert.theta0_pi, cert.theta1_pi, cert.R);
    TemperedCount c = tempered_count(fd, cert, V);
    CHECK(c.n == 1);
    REQUIRE(c.J_V.size() == 1);
    CHECK(c.J_V[0] == 2);

    TemperedCount c2 = tempered_count(fd, cert, V.truncated(Rational(1, 10)));
    CHECK(c2.n == 2);

    // narrow sector V = S(0, pi/8, 1/2): still only the decaying part
    Region narrow = Region::sector(Rational(0), Rational(1, 8), Rational(1, 2));
    TemperedCount c3 = tempered_count(fd, cert, narrow);
    CHECK(c3.n == 1);
    REQUIRE(c3.J_V.size() == 1);
    CHECK(c3.J_V[0] == 2);
}

TEST_CASE("restriction monotonicity and dichotomy") {
    FormalData fd = exponential_parts(parse_operator("z^4*d^2+2*z^3*d-1"));
    SectorCertificate cert = select_sector(fd);
    Region S = Region::sector(cert.theta0_pi, cert.theta1_pi, cert.R);
    std::vector<Region> chain = {S, S.truncated(Rational(1, 100)), S.truncated(Rational(1, 10)),
                                 S.truncated(Rational(1, 10)).truncated(Rational(1, 5))};
    long prev = -1;
    for (const auto& V : chain) {
        TemperedCount c = tempered_count(fd, cert, V);
        if (prev >= 0) CHECK(c.n >= prev);  // larger region earlier in chain
        prev = c.n;
        // dichotomy
        long m = fd.m(), nI = static_cast<long>(cert.I.size());
        CHECK((c.n == m || c.n == m - nI));
        CHECK((inf_modulus(V).touches_zero ? c.n == m - nI : c.n == m));
    }
}

TEST_CASE("verdict/sup consistency sampling") {
    RefSetup s = reference_setup();
    const ExponentialPart& part = s.fd.parts[0];
    Region Sd = s.S.truncated(Rational(1, 10));
    TemperanceVerdict v = is_tempered_exp(part, Sd, s.cert);
    REQUIRE(v.tempered());
    double A = v.bound_A->convert_to<double>();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> rho_d(0.100001, 0.4999), th_d(1e-6, 0.785397);
    for (int i = 0; i < 10000; ++i) {
        double re = part.re_minus_lambda_point(rho_d(rng), th_d(rng));
        CHECK(re <= A + 1e-9);
    }
    // NotTempered: along theta* the real part exceeds any threshold
    TemperanceVerdict nt = is_tempered_exp(part, s.S, s.cert);
    REQUIRE(nt.kind == TemperanceVerdict::Kind::NotTempered);
    double theta_star = nt.direction_pi->convert_to<double>() * 3.141592653589793;
    for (double threshold : {1e2, 1e4}) {
        bool exceeded = false;
        for (double rho = 0.4; rho > 1e-7; rho /= 2)
            if (part.re_minus_lambda_point(rho, theta_star) > threshold) {
                exceeded = true;
                break;
            }
        CHECK(exceeded);
    }
}

TEST_CASE("filtrant presentation") {
    RefSetup s = reference_setup();
    FiltrantPresentation fp = filtrant_presentation(s.fd, s.cert);
    CHECK(fp.m == 1);
    CHECK(fp.n == 1);
    CHECK(fp.family().find("C_{S_delta}") != std::string::npos);

    FormalData fd2 = exponential_parts(parse_operator("z^4*d^2+2*z^3*d-1"));
    SectorCertificate cert2 = select_sector(fd2);
    FiltrantPresentation fp2 = filtrant_presentation(fd2, cert2);
    CHECK(fp2.m == 2);
    CHECK(fp2.n == 1);

    // section-count contract against tempered_count over a family of regions
    Region S2 = Region::sector(cert2.theta0_pi, cert2.theta1_pi, cert2.R);
    std::vector<Region> regions = {S2, S2.truncated(Rational(1, 7)), S2.truncated(Rational(1, 50))};
    for (const auto& V : regions)
        CHECK(fp2.sections_over(V) == tempered_count(fd2, cert2, V).n);

    // two copies of the same growing part: no free summand
    std::map<Rational, GaussianRational> t;
    t[Rational(1)] = GaussianRational(-1);
    FormalData dup;
    dup.l = 1;
    dup.parts = {exponential_part_from_terms(t), exponential_part_from_terms(t)};
    SectorCertificate cdup = select_sector(dup);
    FiltrantPresentation fpd = filtrant_presentation(dup, cdup);
    CHECK(fpd.m == 2);
    CHECK(fpd.n == 2);
    CHECK(fpd.family().find("C^2_{S_delta}") != std::string::npos);
}

TEST_CASE("region_contains: truncation vs ball-complement inclusions") {
    Region S = Region::sector(Rational(0), Rational(1, 4), Rational(1, 2));
    for (long den : {5L, 10L, 20L}) {
        Rational delta(1, den);
        Region Sd = S.truncated(delta);
        Region U = S.minus_disk(GaussianRational(delta / 4), delta / 4);
        ContainsResult r1 = region_contains(Sd, U, 1000);
        CHECK(r1.verified);
        CHECK(r1.closed_form);
        CHECK_FALSE(r1.refuted);
        CHECK(r1.samples_checked >= 100);

        Region Ue = S.minus_disk(GaussianRational(delta), delta);
        ContainsResult r2 = region_contains(Ue, S.truncated(delta), 1000);
        CHECK(r2.verified);
        CHECK(r2.closed_form);
        CHECK_FALSE(r2.refuted);
    }

    // S_delta NOT inside S_{2 delta}: exact witness
    Region Sd = S.truncated(Rational(1, 10));
    Region S2d = S.truncated(Rational(2, 10));
    ContainsResult r3 = region_contains(Sd, S2d, 1000);
    CHECK(r3.refuted);
    REQUIRE(r3.witness.has_value());
    auto [wx, wy] = *r3.witness;
    CHECK(Sd.contains_point(wx, wy));
    CHECK_FALSE(S2d.contains_point(wx, wy));
}

TEST_CASE("cofinal check") {
    Region S = Region::sector(Rational(0), Rational(1, 4), Rational(1, 2));
    auto f1 = [&](const Rational& d) { return S.truncated(d); };
    auto f2 = [&](const Rational& e) { return S.minus_disk(GaussianRational(e), e); };
    std::vector<Rational> grid = {Rational(1, 5), Rational(1, 10), Rational(1, 20)};
    CofinalReport rep = cofinal_check(f1, f2, grid, 400);
    CHECK(rep.ok);
    CHECK(rep.forward.size() == 3);
    CHECK(rep.backward.size() == 3);

    // identity family
    CofinalReport rep2 = cofinal_check(f1, f1, grid, 200);
    CHECK(rep2.ok);

    // S_delta vs S_{delta^2}
    auto f3 = [&](const Rational& d) { return S.truncated(d * d); };
    CofinalReport rep3 = cofinal_check(f1, f3, grid, 200);
    CHECK(rep3.ok);
}

TEST_CASE("count requires region inside certified radius") {
    RefSetup s = reference_setup();
    Region big = Region::sector(Rational(0), Rational(1, 4), Rational(3, 2));
    CHECK_THROWS_AS(tempered_count(s.fd, s.cert, big), RegionOutsideSector);
}
