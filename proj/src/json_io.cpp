#include "stokes/json_io.hpp"

#include <sstream>

namespace stokes {

namespace {

std::string cond_str(Cond c) { return cond_name(c); }

Cond cond_from(const std::string& s) {
    if (s == "i") return Cond::I;
    if (s == "ii") return Cond::II;
    if (s == "zero-part") return Cond::ZeroPart;
    throw DomainError("unknown condition flag '" + s + "'");
}

Rational rat(const ordered_json& j) { return rational_from_string(j.get<std::string>()); }

std::string float_str(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

AnalysisBundle analyze_operator(const ScalarOperator& op, const Rational& r_max,
                                const Rational& witness_r) {
    AnalysisBundle b;
    b.operator_text = op.str();
    b.polygon = newton_polygon(op);
    b.formal = exponential_parts(op);
    b.classification = classify_singularity(b.formal);
    if (!b.classification.regular) {
        b.certificate = select_sector(b.formal, r_max);
        b.presentation = filtrant_presentation(b.formal, *b.certificate);
        b.witness = irregularity_witness(*b.certificate, b.formal, witness_r);
    }
    return b;
}

AnalysisBundle analyze_system(const SystemOperator& sys, const Rational& r_max,
                              const Rational& witness_r) {
    AnalysisBundle b;
    b.system = sys;
    b.formal = exponential_parts(sys);
    b.classification = classify_singularity(b.formal);
    if (!b.classification.regular) {
        b.certificate = select_sector(b.formal, r_max);
        b.presentation = filtrant_presentation(b.formal, *b.certificate);
        b.witness = irregularity_witness(*b.certificate, b.formal, witness_r);
    }
    return b;
}

ordered_json formal_to_json(const FormalData& fd) {
    ordered_json j;
    j["l"] = fd.l;
    ordered_json parts = ordered_json::array();
    for (const auto& p : fd.parts) {
        ordered_json coeffs = ordered_json::array();
        for (const auto& t : p.terms) {
            ordered_json c;
            c["k"] = t.k * (fd.l / p.l);  // exponent over the common ramification
            c["re"] = to_string(t.a.re);
            c["im"] = to_string(t.a.im);
            coeffs.push_back(std::move(c));
        }
        ordered_json part;
        part["coeffs"] = std::move(coeffs);
        parts.push_back(std::move(part));
    }
    j["parts"] = std::move(parts);
    return j;
}

FormalData formal_from_json(const ordered_json& j) {
    FormalData fd;
    long l = j.at("l").get<long>();
    for (const auto& part : j.at("parts")) {
        std::map<Rational, GaussianRational> terms;
        for (const auto& c : part.at("coeffs")) {
            long k = c.at("k").get<long>();
            terms[Rational(k, l)] = GaussianRational(rat(c.at("re")), rat(c.at("im")));
        }
        fd.parts.push_back(exponential_part_from_terms(terms));
    }
    fd.l = 1;
    for (const auto& p : fd.parts) fd.l = std::lcm(fd.l, p.l);
    return fd;
}

ordered_json certificate_to_json(const SectorCertificate& cert) {
    ordered_json j;
    j["theta0"] = ordered_json{{"pi_mult", to_string(cert.theta0_pi)}};
    j["theta1"] = ordered_json{{"pi_mult", to_string(cert.theta1_pi)}};
    ordered_json idx = ordered_json::array();
    for (const auto& ic : cert.indices) {
        ordered_json e;
        e["j"] = ic.j;
        e["cond"] = cond_str(ic.cond);
        e["C"] = to_string(ic.C);
        idx.push_back(std::move(e));
    }
    j["indices"] = std::move(idx);
    j["I"] = cert.I;
    j["J"] = cert.J;
    j["R"] = to_string(cert.R);
    ordered_json rj;
    for (const auto& ic : cert.indices)
        if (ic.cond != Cond::I) rj[std::to_string(ic.j)] = to_string(ic.R_j);
    j["R_j"] = std::move(rj);
    j["R_max"] = to_string(cert.R_max);
    return j;
}

SectorCertificate certificate_from_json(const ordered_json& j) {
    SectorCertificate cert;
    cert.theta0_pi = rat(j.at("theta0").at("pi_mult"));
    cert.theta1_pi = rat(j.at("theta1").at("pi_mult"));
    for (const auto& e : j.at("indices")) {
        IndexCertificate ic;
        ic.j = e.at("j").get<long>();
        ic.cond = cond_from(e.at("cond").get<std::string>());
        ic.C = rat(e.at("C"));
        cert.indices.push_back(std::move(ic));
    }
    cert.I = j.at("I").get<std::vector<long>>();
    cert.J = j.at("J").get<std::vector<long>>();
    cert.R = rat(j.at("R"));
    if (j.contains("R_max")) cert.R_max = rat(j.at("R_max"));
    for (auto& [key, val] : j.at("R_j").items()) {
        long idx = std::stol(key);
        for (auto& ic : cert.indices)
            if (ic.j == idx) ic.R_j = rat(val);
    }
    return cert;
}

ordered_json region_to_json(const Region& v) {
    ordered_json j;
    j["sector"] = ordered_json{{"theta0", ordered_json{{"pi_mult", to_string(v.theta0_pi)}}},
                               {"theta1", ordered_json{{"pi_mult", to_string(v.theta1_pi)}}},
                               {"R", to_string(v.R)}};
    ordered_json cs = ordered_json::array();
    for (const auto& m : v.min_modulus) cs.push_back(ordered_json{{"min_modulus", to_string(m)}});
    for (const auto& d : v.outside_disks)
        cs.push_back(ordered_json{{"outside_disk", ordered_json{{"center_re", to_string(d.center.re)},
                                                                {"center_im", to_string(d.center.im)},
                                                                {"radius", to_string(d.radius)}}}});
    j["constraints"] = std::move(cs);
    return j;
}

Region region_from_json(const ordered_json& j) {
    const auto& s = j.at("sector");
    Region v = Region::sector(rat(s.at("theta0").at("pi_mult")), rat(s.at("theta1").at("pi_mult")),
                              rat(s.at("R")));
    if (j.contains("constraints"))
        for (const auto& c : j.at("constraints")) {
            if (c.contains("min_modulus")) {
                v = v.truncated(rat(c.at("min_modulus")));
            } else if (c.contains("outside_disk")) {
                const auto& d = c.at("outside_disk");
                v = v.minus_disk(
                    GaussianRational(rat(d.at("center_re")), rat(d.at("center_im"))),
                    rat(d.at("radius")));
            } else {
                throw DomainError("unknown region constraint");
            }
        }
    return v;
}

ordered_json witness_to_json(const Witness& w) {
    ordered_json j;
    j["delta"] = to_string(w.delta);
    j["z"] = ordered_json::array({to_string(w.zx), to_string(w.zy)});
    j["xi"] = ordered_json::array({to_string(w.xix), to_string(w.xiy)});
    j["checks"] = ordered_json{
        {"in_SS_Fdelta", w.in_ss_fdelta}, {"in_Char", w.in_char}, {"in_U", w.in_U}};
    return j;
}

Witness witness_from_json(const ordered_json& j) {
    Witness w;
    w.delta = rat(j.at("delta"));
    w.zx = rat(j.at("z").at(0));
    w.zy = rat(j.at("z").at(1));
    w.xix = rat(j.at("xi").at(0));
    w.xiy = rat(j.at("xi").at(1));
    w.in_ss_fdelta = j.at("checks").at("in_SS_Fdelta").get<bool>();
    w.in_char = j.at("checks").at("in_Char").get<bool>();
    w.in_U = j.at("checks").at("in_U").get<bool>();
    return w;
}

ordered_json report_to_json(const CrosscheckReport& rep) {
    ordered_json j;
    j["pass"] = rep.pass;
    j["precision_digits"] = rep.precision_digits;
    j["tol"] = float_str(rep.tol);
    j["rho_hi"] = float_str(rep.rho_hi);
    j["rho_lo"] = float_str(rep.rho_lo);
    ordered_json rays = ordered_json::array();
    for (const auto& rc : rep.rays) {
        ordered_json r;
        r["theta"] = float_str(rc.theta);
        ordered_json fits = ordered_json::array();
        for (const auto& f : rc.fits) {
            ordered_json fj;
            fj["exponent"] = float_str(f.degenerate ? 0.0 : f.exponent);
            fj["coefficient"] = float_str(f.degenerate ? 0.0 : f.coefficient);
            fj["residual"] = float_str(f.residual);
            fj["degenerate"] = f.degenerate;
            fits.push_back(std::move(fj));
        }
        r["fits"] = std::move(fits);
        r["expected_exponent"] = float_str(rc.expected_exponent);
        r["pass"] = rc.pass;
        if (!rc.note.empty()) r["note"] = rc.note;
        rays.push_back(std::move(r));
    }
    j["rays"] = std::move(rays);
    ordered_json summary;
    summary["ray_count"] = rep.rays.size();
    long passed = 0;
    for (const auto& rc : rep.rays) passed += rc.pass ? 1 : 0;
    summary["rays_passed"] = passed;
    j["summary"] = std::move(summary);
    return j;
}

ordered_json bundle_to_json(const AnalysisBundle& b) {
    ordered_json j;
    if (!b.operator_text.empty()) j["operator"] = b.operator_text;
    if (b.system) {
        ordered_json sys;
        sys["m"] = b.system->m;
        sys["N"] = b.system->N;
        ordered_json rows = ordered_json::array();
        for (const auto& row : b.system->A) {
            ordered_json r = ordered_json::array();
            for (const auto& e : row) r.push_back(e.str());
            rows.push_back(std::move(r));
        }
        sys["A"] = std::move(rows);
        j["system"] = std::move(sys);
    }
    j["classification"] = b.classification.regular ? "regular" : "irregular";
    ordered_json slopes = ordered_json::array();
    for (const auto& s : b.classification.positive_slopes) slopes.push_back(to_string(s));
    j["positive_slopes"] = std::move(slopes);
    if (!b.polygon.empty()) {
        ordered_json np = ordered_json::array();
        for (const auto& [slope, len] : b.polygon)
            np.push_back(ordered_json{{"slope", to_string(slope)}, {"length", len}});
        j["newton_polygon"] = std::move(np);
    }
    j["formal"] = formal_to_json(b.formal);
    if (b.certificate) j["certificate"] = certificate_to_json(*b.certificate);
    if (b.presentation) {
        ordered_json p;
        p["m"] = b.presentation->m;
        p["n"] = b.presentation->n;
        p["family"] = b.presentation->family();
        j["presentation"] = std::move(p);
    }
    if (b.witness) j["witness"] = witness_to_json(*b.witness);
    return j;
}

std::string bundle_to_text(const AnalysisBundle& b) {
    std::ostringstream os;
    if (!b.operator_text.empty()) os << "operator:        " << b.operator_text << "\n";
    if (b.system) os << "system:          m=" << b.system->m << ", N=" << b.system->N << "\n";
    os << "classification:  " << (b.classification.regular ? "regular" : "irregular") << "\n";
    if (!b.polygon.empty()) {
        os << "newton polygon: ";
        for (const auto& [s, len] : b.polygon) os << " (slope " << to_string(s) << ", length " << len << ")";
        os << "\n";
    }
    os << "ramification l:  " << b.formal.l << "\n";
    for (std::size_t i = 0; i < b.formal.parts.size(); ++i)
        os << "Lambda_" << (i + 1) << ":        " << b.formal.parts[i].str() << "\n";
    if (b.certificate) {
        const auto& c = *b.certificate;
        os << "sector:          theta in (" << to_string(c.theta0_pi) << "pi, "
           << to_string(c.theta1_pi) << "pi), R = " << to_string(c.R) << "\n";
        os << "I = {";
        for (std::size_t i = 0; i < c.I.size(); ++i) os << (i ? "," : "") << c.I[i];
        os << "}, J = {";
        for (std::size_t i = 0; i < c.J.size(); ++i) os << (i ? "," : "") << c.J[i];
        os << "}\n";
        for (const auto& ic : c.indices)
            os << "  index " << ic.j << ": cond " << cond_str(ic.cond)
               << (ic.cond == Cond::ZeroPart ? "" : ", C = " + to_string(ic.C)) << "\n";
    }
    if (b.presentation)
        os << "presentation:    \"lim\" " << b.presentation->family() << "\n";
    if (b.witness) {
        const auto& w = *b.witness;
        os << "witness:         delta = " << to_string(w.delta) << ", z* = (" << to_string(w.zx)
           << ", " << to_string(w.zy) << "), xi* = (" << to_string(w.xix) << ", "
           << to_string(w.xiy) << ")\n";
        os << "checks:          in SS(F_delta): " << (w.in_ss_fdelta ? "yes" : "no")
           << ", in Char: " << (w.in_char ? "yes" : "no") << ", in U: " << (w.in_U ? "yes" : "no")
           << "\n";
    }
    return os.str();
}

SystemOperator system_from_json(const ordered_json& j) {
    long N = j.at("N").get<long>();
    std::vector<std::vector<PuiseuxPoly>> A;
    for (const auto& row : j.at("A")) {
        std::vector<PuiseuxPoly> r;
        for (const auto& e : row) r.push_back(parse_poly(e.get<std::string>()));
        A.push_back(std::move(r));
    }
    return SystemOperator::make(N, std::move(A));
}

VerifyOutcome verify_bundle(const ordered_json& j) {
    VerifyOutcome out;
    out.ok = true;
    auto line = [&](bool ok, const std::string& what) {
        out.lines.push_back(std::string(ok ? "PASS  " : "FAIL  ") + what);
        out.ok = out.ok && ok;
    };

    AnalysisBundle fresh;
    if (j.contains("operator")) {
        ScalarOperator op = parse_operator(j.at("operator").get<std::string>());
        fresh = analyze_operator(op);
    } else if (j.contains("system")) {
        fresh = analyze_system(system_from_json(j.at("system")));
    } else {
        line(false, "bundle carries no operator");
        return out;
    }

    FormalData stored = formal_from_json(j.at("formal"));
    bool formal_ok = stored.l == fresh.formal.l && stored.m() == fresh.formal.m();
    if (formal_ok)
        for (long i = 0; i < stored.m(); ++i)
            formal_ok = formal_ok &&
                        stored.parts[static_cast<std::size_t>(i)] == fresh.formal.parts[static_cast<std::size_t>(i)];
    line(formal_ok, "formal data reproduces");

    bool is_irregular = j.at("classification").get<std::string>() == "irregular";
    line(is_irregular == !fresh.classification.regular, "classification reproduces");

    if (j.contains("certificate")) {
        SectorCertificate cert = certificate_from_json(j.at("certificate"));
        std::string why;
        bool cert_ok = verify_certificate(cert, fresh.formal, 1000, &why);
        line(cert_ok, "certificate conditions re-verify" + (cert_ok ? "" : " (" + why + ")"));
        bool rad_ok = verify_radius(cert, fresh.formal, 1000, &why);
        line(rad_ok, "radius bound re-verifies" + (rad_ok ? "" : " (" + why + ")"));
        if (j.contains("witness")) {
            Witness w = witness_from_json(j.at("witness"));
            ConicSubset ss = ss_Fdelta(w.delta, cert);
            ConicSubset ch = char_variety(fresh.formal);
            bool w_ok = ss.contains(w.point()) && !ch.contains(w.point());
            line(w_ok, "witness covector re-verifies");
        }
        if (j.contains("presentation")) {
            long n = j.at("presentation").at("n").get<long>();
            line(n == static_cast<long>(cert.I.size()), "presentation rank matches |I|");
        }
    } else {
        line(!is_irregular, "regular bundle carries no certificate");
    }
    return out;
}

}  // namespace stokes
