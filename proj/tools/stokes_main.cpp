#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "stokes/svg.hpp"

using namespace stokes;

namespace {

constexpr int EXIT_SYNTAX = 1;
constexpr int EXIT_UNSUPPORTED = 2;
constexpr int EXIT_REGION = 3;
constexpr int EXIT_NO_WITNESS = 4;
constexpr int EXIT_ORACLE_FAIL = 5;

void emit_error(const std::string& type, const std::string& message, long offset = -1) {
    ordered_json e;
    e["error"] = ordered_json{{"type", type}, {"message", message}};
    if (offset >= 0) e["error"]["byte_offset"] = offset;
    std::cerr << e.dump() << "\n";
}

ordered_json load_json_arg(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return ordered_json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw DomainError("cannot open file '" + arg + "'");
    ordered_json j;
    in >> j;
    return j;
}

AnalysisBundle analyze_input(const std::string& op_text, const std::string& system_file,
                             const Rational& r_max, const Rational& witness_r) {
    if (!op_text.empty()) return analyze_operator(parse_operator(op_text), r_max, witness_r);
    return analyze_system(system_from_json(load_json_arg(system_file)), r_max, witness_r);
}

int dispatch(int argc, char** argv) {
    CLI::App app{"analyzer of irregular ODE singularities at the origin"};
    app.require_subcommand(1);

    std::string op_text, system_file, region_arg, format = "json", what = "sectors", out_file;
    std::string r_arg = "1/2", rmax_arg = "1";
    int rays = 2;
    double tol = 1e-10;
    long digits = 50;

    auto add_operator_opts = [&](CLI::App* cmd, bool allow_system) {
        cmd->add_option("--operator", op_text, "operator text, e.g. \"z^2*d + 1\"");
        if (allow_system)
            cmd->add_option("--system", system_file, "system JSON file: {\"N\":., \"A\":[[..]]}");
    };

    auto* analyze = app.add_subcommand("analyze", "formal data, certificate, witness");
    add_operator_opts(analyze, true);
    analyze->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
    analyze->add_option("--r-max", rmax_arg, "working radius cap (rational, default 1)");

    auto* count = app.add_subcommand("count", "tempered solution count over a region");
    add_operator_opts(count, true);
    count->add_option("--region", region_arg, "region JSON (inline or file path)")->required();

    auto* certificate = app.add_subcommand("certificate", "sector certificate + witness JSON");
    add_operator_opts(certificate, true);
    certificate->add_option("--r", r_arg, "witness neighborhood size (rational)");

    auto* oracle_cmd = app.add_subcommand("oracle", "numerical growth crosscheck");
    add_operator_opts(oracle_cmd, true);
    oracle_cmd->add_option("--rays", rays, "number of interior ray directions");
    oracle_cmd->add_option("--tol", tol, "local error per step");
    oracle_cmd->add_option("--digits", digits, "working precision in decimal digits");

    auto* plot = app.add_subcommand("plot", "emit an SVG figure");
    add_operator_opts(plot, true);
    plot->add_option("--what", what, "sectors|growth|microsupport")
        ->check(CLI::IsMember({"sectors", "growth", "microsupport"}));
    plot->add_option("--out", out_file, "output SVG path")->required();

    std::string verify_file;
    auto* verify = app.add_subcommand("verify", "re-check an emitted analysis bundle");
    verify->add_option("file", verify_file, "bundle JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand(analyze)) {
        AnalysisBundle b = analyze_input(op_text, system_file, rational_from_string(rmax_arg),
                                         Rational(1, 2));
        if (format == "json") std::cout << bundle_to_json(b).dump(2) << "\n";
        else std::cout << bundle_to_text(b);
        return 0;
    }
    if (app.got_subcommand(count)) {
        AnalysisBundle b = analyze_input(op_text, system_file, Rational(1), Rational(1, 2));
        Region V = region_from_json(load_json_arg(region_arg));
        if (b.classification.regular) {
            // Every part is zero: all m solutions are tempered on any region.
            ordered_json j;
            j["n"] = b.formal.m();
            std::vector<long> all;
            for (long i = 1; i <= b.formal.m(); ++i) all.push_back(i);
            j["J_V"] = all;
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        TemperedCount c = tempered_count(b.formal, *b.certificate, V);
        ordered_json j;
        j["n"] = c.n;
        j["J_V"] = c.J_V;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (app.got_subcommand(certificate)) {
        Rational r = rational_from_string(r_arg);
        AnalysisBundle b = analyze_input(op_text, system_file, Rational(1), r);
        if (b.classification.regular)
            throw NoIrregularityWitness("operator is regular; no witness covector exists");
        // self-check before emission
        std::string why;
        if (!verify_certificate(*b.certificate, b.formal, 1000, &why) ||
            !verify_radius(*b.certificate, b.formal, 1000, &why))
            throw CertificationFailure("certificate failed emission self-check: " + why);
        ordered_json j;
        j["certificate"] = certificate_to_json(*b.certificate);
        j["witness"] = witness_to_json(*b.witness);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (app.got_subcommand(oracle_cmd)) {
        AnalysisBundle b = analyze_input(op_text, system_file, Rational(1), Rational(1, 2));
        const SectorCertificate* cert = b.certificate ? &*b.certificate : nullptr;
        CrosscheckReport rep = crosscheck(b.formal, cert, default_rays(cert, rays), tol, digits);
        std::cout << report_to_json(rep).dump(2) << "\n";
        return rep.pass ? 0 : EXIT_ORACLE_FAIL;
    }
    if (app.got_subcommand(plot)) {
        AnalysisBundle b = analyze_input(op_text, system_file, Rational(1), Rational(1, 2));
        std::string svg;
        if (what == "sectors" || what == "microsupport") {
            if (b.classification.regular)
                throw NoIrregularityWitness("plot requires an irregular operator");
            svg = what == "sectors" ? render_sectors_svg(b) : render_microsupport_svg(b);
        } else {
            const SectorCertificate* cert = b.certificate ? &*b.certificate : nullptr;
            std::vector<double> dirs = default_rays(cert, 2);
            SystemOperator sys =
                b.system ? *b.system : companion_system(parse_operator(b.operator_text));
            CrosscheckReport rep = crosscheck(b.formal, cert, dirs, 1e-8, 30);
            std::vector<RayTrace> traces;
            for (double th : dirs) traces.push_back(integrate_ray(sys, th, 0.5, 0.01, 1e-8, 30));
            svg = render_growth_svg(b, rep, traces);
        }
        std::ofstream out(out_file);
        if (!out) throw DomainError("cannot write '" + out_file + "'");
        out << svg;
        return 0;
    }
    if (app.got_subcommand(verify)) {
        VerifyOutcome v = verify_bundle(load_json_arg(verify_file));
        for (const auto& l : v.lines) std::cout << l << "\n";
        std::cout << (v.ok ? "VERIFIED" : "VERIFICATION FAILED") << "\n";
        return v.ok ? 0 : 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const SyntaxError& e) {
        emit_error("SyntaxError", e.what(), static_cast<long>(e.offset));
        return EXIT_SYNTAX;
    } catch (const ZeroLeadingCoefficient& e) {
        emit_error("ZeroLeadingCoefficient", e.what());
        return EXIT_SYNTAX;
    } catch (const NonLaurentQuotient& e) {
        emit_error("NonLaurentQuotient", e.what());
        return EXIT_UNSUPPORTED;
    } catch (const UnsupportedOperator& e) {
        emit_error("UnsupportedOperator", e.what());
        return EXIT_UNSUPPORTED;
    } catch (const RegionOutsideSector& e) {
        emit_error("RegionOutsideSector", e.what());
        return EXIT_REGION;
    } catch (const NoIrregularityWitness& e) {
        emit_error("NoIrregularityWitness", e.what());
        return EXIT_NO_WITNESS;
    } catch (const std::exception& e) {
        emit_error("Error", e.what());
        return 1;
    }
}
