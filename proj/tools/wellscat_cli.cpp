#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <wellscat/wellscat.hpp>

namespace {

using namespace wellscat;

/// strict double parse: the whole token must be consumed
double parse_number(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

/// well spec grammar: "chi:R=<r>" or "step:depth=<d>,radius=<a>"
RadialPotential parse_well(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    std::map<std::string, double> kv;
    if (colon != std::string::npos) {
        std::string rest = spec.substr(colon + 1);
        std::size_t start = 0;
        while (start <= rest.size()) {
            const auto comma = rest.find(',', start);
            const std::string item =
                rest.substr(start, comma == std::string::npos ? std::string::npos
                                                              : comma - start);
            const auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                throw std::invalid_argument("malformed well parameter '" + item + "'");
            const std::string key = item.substr(0, eq);
            if (kv.count(key))
                throw std::invalid_argument("duplicate well parameter '" + key + "'");
            kv[key] = parse_number(item.substr(eq + 1));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    if (kind == "chi") {
        double R = 1.0;
        if (auto it = kv.find("R"); it != kv.end()) {
            R = it->second;
            kv.erase(it);
        }
        if (!kv.empty())
            throw std::invalid_argument("unknown parameter for chi well");
        return single_well(R);
    }
    if (kind == "step") {
        const auto d = kv.find("depth");
        const auto r = kv.find("radius");
        if (d == kv.end() || r == kv.end() || kv.size() != 2)
            throw std::invalid_argument("step well needs exactly depth=<v>,radius=<v>");
        return step_well(d->second, r->second);
    }
    throw std::invalid_argument("unknown well kind '" + kind +
                                "' (expected chi or step)");
}

/// "lo:hi" -> pair of numbers with lo < hi
std::pair<double, double> parse_range(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("range must be <lo>:<hi>, got '" + s + "'");
    const double lo = parse_number(s.substr(0, colon));
    const double hi = parse_number(s.substr(colon + 1));
    if (!(lo < hi)) throw std::invalid_argument("range needs lo < hi");
    return {lo, hi};
}

/// single ordered write to stdout or to a file; failures are runtime errors
void write_output(const std::string& payload, const std::string& path) {
    if (path.empty() || path == "-") {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        if (std::fflush(stdout) != 0)
            throw std::runtime_error("failed to flush standard output");
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output path '" + path + "'");
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    out.flush();
    if (!out) throw std::runtime_error("failed writing output path '" + path + "'");
}

struct PhaseArgs {
    int l = 0;
    int n = 3;
    double lambda = 0.0;
    std::string well = "chi:R=1";
    double kmax = 30.0;
    double kmin = 1e-3;
    std::string output;
};

struct ScanArgs {
    std::string var = "k";
    int l = 0;
    int n = 3;
    double lambda = 0.0;
    double R = 1.0;
    double k = 1.0;
    std::string range;
    double step = 0.0;
    std::string output;
};

struct CertifyArgs {
    double R = 0.0;
    double x0_norm = 3.0;
    double lambda = 0.0;
    int l_max = 8;
    int lt_max = 8;
    double kmin = 0.1;
    double kmax = 20.0;
    double margin_threshold = 1e-4;
    int n = 3;
    double step = 0.0;
    std::string emit_path;
    std::string output;
};

struct SuggestArgs {
    std::vector<double> lambdas;
    double x0_norm = 3.0;
    double r_lo = 0.5;
    double r_hi = 1.8;
    int l_max = 8;
    int lt_max = 8;
    double kmin = 0.1;
    double kmax = 20.0;
    int grid_points = 161;
    double step = 0.0;
    int n = 3;
    std::string output;
};

struct LevinsonArgs {
    int l = 0;
    int n = 3;
    double lambda = 0.0;
    std::string well = "chi:R=1";
    double kmin = 1e-3;
    double kmax = 30.0;
    std::string output;
};

struct ModelArgs {
    int n_trunc = 2000;
    double kmin = -1.0;
    double kmax = 3.0;
    int points = 400;
    int m_lowest = 6;
    std::string output;
};

int cmd_phase_shifts(const PhaseArgs& a) {
    const RadialPotential well = parse_well(a.well);
    const PhaseCurve curve = phase_curve(a.l, a.n, a.lambda, well, a.kmax, a.kmin);
    write_output(phase_curve_csv(curve, {{"well", a.well}}), a.output);
    return 0;
}

int cmd_wronskian_scan(const ScanArgs& a) {
    const auto [lo, hi] = parse_range(a.range);
    const ZeroScan scan =
        a.var == "k" ? scan_zeros_in_k(a.l, a.n, a.lambda, a.R, lo, hi, a.step)
                     : scan_zeros_in_R(a.l, a.n, a.lambda, a.k, lo, hi, a.step);
    write_output(zero_scan_csv(scan), a.output);
    return 0;
}

int cmd_certify(const CertifyArgs& a) {
    const DoubleWellConfig config(a.R, a.x0_norm, a.lambda);
    const TransparencyCertificate cert = certify_non_transparency(
        config, a.l_max, a.lt_max, a.kmin, a.kmax, a.margin_threshold, a.n, a.step);
    const std::string payload = certificate_json(cert);
    write_output(payload, a.output);
    if (!a.emit_path.empty()) write_output(payload, a.emit_path);
    return cert.pass ? 0 : 1;
}

int cmd_suggest_r(const SuggestArgs& a) {
    const SuggestedR sug =
        suggest_r(a.lambdas, a.x0_norm, a.r_lo, a.r_hi, a.l_max, a.lt_max, a.kmin,
                  a.kmax, a.grid_points, a.step, a.n);
    write_output(suggest_r_csv(sug), a.output);
    return 0;
}

int cmd_levinson(const LevinsonArgs& a) {
    const RadialPotential well = parse_well(a.well);
    const LevinsonReport rep =
        levinson_check(a.l, a.n, a.lambda, well, a.kmin, a.kmax);
    write_output(levinson_json(rep, {{"well", a.well}}), a.output);
    return rep.pass ? 0 : 1;
}

int cmd_model_l2(const ModelArgs& a) {
    if (a.points < 2) throw std::invalid_argument("model-l2 needs --points >= 2");
    if (!(a.kmax > a.kmin)) throw std::invalid_argument("model-l2 needs kmin < kmax");
    if (a.m_lowest < 1) throw std::invalid_argument("model-l2 needs --m-lowest >= 1");
    std::vector<double> grid(static_cast<std::size_t>(a.points));
    for (int i = 0; i < a.points; ++i)
        grid[static_cast<std::size_t>(i)] =
            a.kmin + (a.kmax - a.kmin) * static_cast<double>(i) / (a.points - 1);
    grid.front() = a.kmin;
    grid.back() = a.kmax;
    const SpectrumFlow flow = spectrum_flow(a.n_trunc, grid);
    write_output(spectrum_flow_csv(flow, a.m_lowest), a.output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partial-wave transparency toolkit for compactly supported radial wells"};
    app.set_version_flag("--version", std::string(version_string));
    app.set_config("--config", "", "flat key=value configuration file");
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = hardware default)");

    PhaseArgs pa;
    CLI::App* phase = app.add_subcommand("phase-shifts", "emit a continuous phase branch as CSV");
    phase->add_option("--l", pa.l)->check(CLI::NonNegativeNumber);
    phase->add_option("--n", pa.n)->check(CLI::Range(2, 1000));
    phase->add_option("--lambda", pa.lambda)->required()->check(CLI::NonNegativeNumber);
    phase->add_option("--well", pa.well);
    phase->add_option("--kmax", pa.kmax);
    phase->add_option("--kmin", pa.kmin);
    phase->add_option("--output,-o", pa.output);

    ScanArgs sa;
    CLI::App* scan = app.add_subcommand("wronskian-scan", "scan the transparency determinant for zeros");
    scan->add_option("--var", sa.var)->check(CLI::IsMember({"k", "R"}));
    scan->add_option("--l", sa.l)->check(CLI::NonNegativeNumber);
    scan->add_option("--n", sa.n)->check(CLI::Range(2, 1000));
    scan->add_option("--lambda", sa.lambda)->required()->check(CLI::NonNegativeNumber);
    scan->add_option("--R", sa.R)->check(CLI::PositiveNumber);
    scan->add_option("--k", sa.k)->check(CLI::PositiveNumber);
    scan->add_option("--range", sa.range)->required();
    scan->add_option("--step", sa.step)->check(CLI::NonNegativeNumber);
    scan->add_option("--output,-o", sa.output);

    CertifyArgs ca;
    CLI::App* certify = app.add_subcommand("certify", "non-transparency certificate for a double well");
    certify->add_option("--R", ca.R)->required()->check(CLI::PositiveNumber);
    certify->add_option("--x0-norm", ca.x0_norm)->check(CLI::PositiveNumber);
    certify->add_option("--lambda", ca.lambda)->required()->check(CLI::PositiveNumber);
    certify->add_option("--l-max", ca.l_max)->check(CLI::NonNegativeNumber);
    certify->add_option("--lt-max", ca.lt_max)->check(CLI::NonNegativeNumber);
    certify->add_option("--kmin", ca.kmin)->check(CLI::PositiveNumber);
    certify->add_option("--kmax", ca.kmax)->check(CLI::PositiveNumber);
    certify->add_option("--margin-threshold", ca.margin_threshold)->check(CLI::PositiveNumber);
    certify->add_option("--n", ca.n)->check(CLI::Range(2, 1000));
    certify->add_option("--step", ca.step)->check(CLI::NonNegativeNumber);
    certify->add_option("--emit-certificate", ca.emit_path);
    certify->add_option("--output,-o", ca.output);

    SuggestArgs ga;
    CLI::App* suggest = app.add_subcommand("suggest-r", "search for a radius maximizing the joint margin");
    suggest->add_option("--lambdas", ga.lambdas)->required()->delimiter(',');
    suggest->add_option("--x0-norm", ga.x0_norm)->check(CLI::PositiveNumber);
    suggest->add_option("--r-lo", ga.r_lo)->check(CLI::PositiveNumber);
    suggest->add_option("--r-hi", ga.r_hi)->check(CLI::PositiveNumber);
    suggest->add_option("--l-max", ga.l_max)->check(CLI::NonNegativeNumber);
    suggest->add_option("--lt-max", ga.lt_max)->check(CLI::NonNegativeNumber);
    suggest->add_option("--kmin", ga.kmin)->check(CLI::PositiveNumber);
    suggest->add_option("--kmax", ga.kmax)->check(CLI::PositiveNumber);
    suggest->add_option("--grid-points", ga.grid_points)->check(CLI::Range(2, 1000000));
    suggest->add_option("--step", ga.step)->check(CLI::NonNegativeNumber);
    suggest->add_option("--n", ga.n)->check(CLI::Range(2, 1000));
    suggest->add_option("--output,-o", ga.output);

    LevinsonArgs la;
    CLI::App* levinson = app.add_subcommand("levinson", "winding vs bound-state comparison");
    levinson->add_option("--l", la.l)->check(CLI::NonNegativeNumber);
    levinson->add_option("--n", la.n)->check(CLI::Range(2, 1000));
    levinson->add_option("--lambda", la.lambda)->required()->check(CLI::NonNegativeNumber);
    levinson->add_option("--well", la.well);
    levinson->add_option("--kmin", la.kmin)->check(CLI::PositiveNumber);
    levinson->add_option("--kmax", la.kmax)->check(CLI::PositiveNumber);
    levinson->add_option("--output,-o", la.output);

    ModelArgs ma;
    CLI::App* model = app.add_subcommand("model-l2", "rank-one spectral flow data");
    model->add_option("--n-trunc", ma.n_trunc)->check(CLI::Range(2, 100000));
    model->add_option("--kmin", ma.kmin);
    model->add_option("--kmax", ma.kmax);
    model->add_option("--points", ma.points)->check(CLI::Range(2, 1000000));
    model->add_option("--m-lowest", ma.m_lowest)->check(CLI::Range(1, 1000));
    model->add_option("--output,-o", ma.output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (threads > 0) set_max_threads(threads);
        if (phase->parsed()) return cmd_phase_shifts(pa);
        if (scan->parsed()) return cmd_wronskian_scan(sa);
        if (certify->parsed()) return cmd_certify(ca);
        if (suggest->parsed()) return cmd_suggest_r(ga);
        if (levinson->parsed()) return cmd_levinson(la);
        if (model->parsed()) return cmd_model_l2(ma);
        std::cerr << "config error: no command selected\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 3;
    }
}
