#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <unistd.h>

#include "entwit/chsh.hpp"
#include "entwit/gaussian.hpp"
#include "entwit/json_io.hpp"
#include "entwit/qubit.hpp"
#include "entwit/sampler.hpp"
#include "entwit/verify.hpp"

namespace entwit::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string trim_lower(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

double parse_number(const std::string& s) {
    if (s.empty()) throw UsageError("empty number");
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw UsageError("not a number: '" + s + "'");
    return v;
}

// number or number/number
double parse_ratio(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return parse_number(s);
    const double den = parse_number(s.substr(slash + 1));
    if (den == 0.0) throw UsageError("division by zero in '" + s + "'");
    return parse_number(s.substr(0, slash)) / den;
}

struct GlobalOptions {
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out_path;
    std::string hbar_text = "1";

    double hbar() const {
        if (trim_lower(hbar_text) == "si") return kHbarSI;
        const double h = parse_number(hbar_text);
        if (!(h > 0.0)) throw UsageError("--hbar must be positive");
        return h;
    }
    bool csv() const { return format == "csv"; }
};

void write_atomic(const std::string& path, const std::string& data) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f << data;
        if (!f.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

// Data to --out (or stdout); summary line to stdout only when writing a file.
void emit(const GlobalOptions& g, const std::string& data, const std::string& summary,
          std::ostream& out) {
    if (g.out_path.empty()) {
        out << data;
        return;
    }
    write_atomic(g.out_path, data);
    out << summary << '\n';
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Operator load_operator(const std::string& path) {
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const Json::exception& e) {
        throw UsageError("malformed JSON in " + path + ": " + e.what());
    }
    return operator_from_json(j);
}

TwoQubitState parse_state(const std::string& selector) {
    const std::string s = trim_lower(selector);
    if (s == "phi_plus" || s == "phi+") return bell_phi_plus();
    if (s == "classical") return classical_correlated();
    if (s.rfind("werner", 0) == 0) {
        std::string arg = s.substr(6);
        if (!arg.empty() && (arg.front() == ':' || arg.front() == '=')) arg = arg.substr(1);
        else if (arg.size() >= 2 && arg.front() == '(' && arg.back() == ')')
            arg = arg.substr(1, arg.size() - 2);
        else throw UsageError("werner state needs a parameter, e.g. werner:0.5");
        return werner(parse_ratio(arg));
    }
    if (selector.rfind("file:", 0) == 0) return TwoQubitState(load_operator(selector.substr(5)));
    throw UsageError("unknown state selector '" + selector +
                     "' (expected phi_plus, classical, werner:P or file:PATH)");
}

ChshSettings parse_settings(const std::string& text) {
    const std::string s = trim_lower(text);
    if (s == "green") return ChshSettings::green();
    if (s == "yellow") return ChshSettings::yellow();
    const auto v = parse_angle_list(text);
    if (v.size() != 4) {
        throw UsageError("expected 4 settings (a1,a2,b1,b2), got " + std::to_string(v.size()));
    }
    return {MeasurementSetting(v[0]), MeasurementSetting(v[1]), MeasurementSetting(v[2]),
            MeasurementSetting(v[3])};
}

// ---------------------------------------------------------------------------

struct CorrmatArgs {
    std::string state = "phi_plus";
    std::string basis = "original";
};

int cmd_corrmat(const GlobalOptions& g, const CorrmatArgs& a, std::ostream& out) {
    const TwoQubitState state = parse_state(a.state);
    const std::string basis = trim_lower(a.basis);
    Operator u = Operator::identity(2);
    if (basis == "hadamard") u = hadamard();
    else if (basis != "original") throw UsageError("unknown basis '" + a.basis + "'");
    const CorrelationMatrix m = correlation_matrix(state, u, u, basis, basis);

    std::string data;
    if (g.csv()) {
        data = "a\\b,0,1\n";
        for (int i = 0; i < 2; ++i) data += fmt::format("{},{},{}\n", i, num(m.p[i][0]), num(m.p[i][1]));
    } else {
        data = dump(Json(m));
    }
    emit(g, data,
         fmt::format("corrmat {} basis: p = [[{}, {}], [{}, {}]]", basis, num(m.p[0][0]),
                     num(m.p[0][1]), num(m.p[1][0]), num(m.p[1][1])),
         out);
    return kSuccess;
}

struct BellScanArgs {
    std::string state = "phi_plus";
    std::string theta_a = "0,pi/4";
    std::string grid = "0:pi:181";
};

int cmd_bell_scan(const GlobalOptions& g, const BellScanArgs& a, std::ostream& out) {
    const TwoQubitState state = parse_state(a.state);
    const std::vector<double> theta_a = parse_angle_list(a.theta_a);
    if (theta_a.empty()) throw UsageError("--theta-a needs at least one angle");
    const std::vector<double> grid = parse_grid(a.grid);

    std::vector<std::vector<double>> columns;
    for (double ta : theta_a) {
        std::vector<double> col;
        for (const auto& [tb, c] : chsh_scan(state, MeasurementSetting(ta), grid)) col.push_back(c);
        columns.push_back(std::move(col));
    }

    std::string data;
    if (g.csv()) {
        data = "theta_b";
        for (double ta : theta_a) data += ",theta_a=" + num(ta);
        data += '\n';
        for (std::size_t k = 0; k < grid.size(); ++k) {
            data += num(grid[k]);
            for (const auto& col : columns) data += "," + num(col[k]);
            data += '\n';
        }
    } else {
        data = dump(Json{{"theta_a", theta_a}, {"theta_b", grid}, {"correlations", columns}});
    }
    emit(g, data,
         fmt::format("bell-scan: {} curve(s) x {} points", columns.size(), grid.size()), out);
    return kSuccess;
}

struct ChshArgs {
    std::string state = "phi_plus";
    std::string settings = "green";
    std::int64_t sample = 0;
    double margin = 0.0;
};

int cmd_chsh(const GlobalOptions& g, const ChshArgs& a, std::ostream& out) {
    const TwoQubitState state = parse_state(a.state);
    const ChshSettings settings = parse_settings(a.settings);
    ChshResult r;
    if (a.sample > 0) {
        if (a.sample < 2) throw UsageError("--sample must be >= 2");
        r = chsh_estimate(state, settings, a.sample, g.seed);
    } else {
        if (!(a.margin >= 0.0)) throw UsageError("--margin must be >= 0");
        r = chsh_evaluate(state, settings, a.margin);
    }

    std::string data;
    if (g.csv()) {
        data = "a1b1,a1b2,a2b1,a2b2,value,verdict,std_error\n";
        for (double c : r.correlations) data += num(c) + ",";
        data += num(r.value) + "," + std::string(to_string(r.verdict)) + "," +
                (r.std_error ? num(*r.std_error) : std::string()) + "\n";
    } else {
        data = dump(Json(r));
    }
    std::string summary = fmt::format("value={} verdict={}", num(r.value), to_string(r.verdict));
    if (r.std_error) summary += fmt::format(" std_error={}", num(*r.std_error));
    emit(g, data, summary, out);
    return r.verdict == Verdict::TsirelsonViolationError ? kFailure : kSuccess;
}

struct EprArgs {
    std::optional<double> w, L, lambda, alpha, Lc;
    std::string config;
    std::optional<double> dxm, dpp, dxp, dpm;
    std::int64_t sample = 0;
    int pdf_grid = 0;
    double margin = 0.0;
    std::string samples_out;
};

Json pdf_grid_json(const GaussianJointState& s, int points) {
    auto axis = [points](double sd) {
        std::vector<double> v(static_cast<std::size_t>(points));
        const double lim = 4.0 * sd;
        for (int k = 0; k < points; ++k) v[k] = -lim + 2.0 * lim * k / (points - 1);
        return v;
    };
    auto grid = [&](bool position) {
        const double sd = position ? s.subsystem_dx() : s.subsystem_dp();
        const auto ax = axis(sd);
        std::vector<std::vector<double>> density;
        for (double ua : ax) {
            std::vector<double> row;
            for (double ub : ax)
                row.push_back(position ? joint_pdf_position(s, ua, ub) : joint_pdf_momentum(s, ua, ub));
            density.push_back(std::move(row));
        }
        return Json{{"axis", ax}, {"density", density}};
    };
    return Json{{"position", grid(true)}, {"momentum", grid(false)}};
}

void write_samples_csv(const std::string& path, const GaussianSample& s) {
    std::string data = "ua,ub\n";
    for (const auto& [ua, ub] : s.samples) data += num(ua) + "," + num(ub) + "\n";
    write_atomic(path, data);
}

int cmd_epr_reid(const GlobalOptions& g, const EprArgs& a, std::ostream& out) {
    const double hbar = g.hbar();
    const bool spdc_mode = a.w || a.L || a.lambda || a.alpha || a.Lc || !a.config.empty();
    const bool width_mode = a.dxm || a.dpp || a.dxp || a.dpm;
    if (spdc_mode == width_mode) {
        throw UsageError("give exactly one of SPDC parameters (--w --L --lambda [--alpha --Lc] or "
                         "--config) or widths (--dxm --dpp [--dxp --dpm])");
    }
    if (!(a.margin >= 0.0)) throw UsageError("--margin must be >= 0");

    std::optional<GaussianJointState> state;
    if (spdc_mode) {
        SpdcConfig cfg;
        if (!a.config.empty()) {
            if (a.w || a.L || a.lambda || a.alpha || a.Lc) {
                throw UsageError("--config cannot be combined with SPDC flags");
            }
            try {
                cfg = spdc_config_from_json(Json::parse(read_file(a.config)));
            } catch (const Json::exception& e) {
                throw UsageError("malformed JSON in " + a.config + ": " + e.what());
            }
        } else {
            if (!a.w || !a.L || !a.lambda) throw UsageError("SPDC mode needs --w, --L and --lambda");
            cfg.w = *a.w;
            cfg.L = *a.L;
            cfg.lambda = *a.lambda;
            if (a.alpha) cfg.alpha = *a.alpha;
            cfg.Lc = a.Lc;
        }
        state = spdc_joint_state(cfg, PhysicalConfig{hbar});
    } else {
        if (!a.dxm || !a.dpp) throw UsageError("widths mode needs --dxm and --dpp");
        // Missing conjugate widths default to the Fourier-limited completion.
        const double dxp = a.dxp ? *a.dxp : hbar / (2.0 * *a.dpp);
        const double dpm = a.dpm ? *a.dpm : hbar / (2.0 * *a.dxm);
        state = GaussianJointState::from_widths(dxp, *a.dxm, *a.dpp, dpm, hbar);
    }

    EprReidResult r;
    if (a.sample > 0) {
        if (a.sample < 2) throw UsageError("--sample must be >= 2");
        r = epr_reid_estimate(*state, a.sample, g.seed);
        if (!a.samples_out.empty()) {
            write_samples_csv(a.samples_out + ".position.csv",
                              sample_gaussian(*state, QuadratureBasis::Position, a.sample, g.seed, 0));
            write_samples_csv(a.samples_out + ".momentum.csv",
                              sample_gaussian(*state, QuadratureBasis::Momentum, a.sample, g.seed, 1));
        }
    } else {
        if (!a.samples_out.empty()) throw UsageError("--samples-out requires --sample");
        r = epr_reid(*state, a.margin);
    }

    std::string data;
    if (g.csv()) {
        if (a.pdf_grid > 0) throw UsageError("--pdf-grid is only available with --format json");
        data = "dxm,dpp,product,bound,verdict\n" +
               fmt::format("{},{},{},{},{}\n", num(r.dxm), num(r.dpp), num(r.product), num(r.bound),
                           to_string(r.verdict));
    } else {
        Json j = r;
        if (a.pdf_grid > 0) {
            if (a.pdf_grid < 2) throw UsageError("--pdf-grid needs at least 2 points");
            j["pdf_grid"] = pdf_grid_json(*state, a.pdf_grid);
        }
        data = dump(j);
    }
    emit(g, data,
         fmt::format("product={} bound={} verdict={}", num(r.product), num(r.bound), to_string(r.verdict)),
         out);
    return kSuccess;
}

struct VerifyArgs {
    VerifySizes sizes;
    std::string state_file;
};

int cmd_verify(const GlobalOptions& g, const VerifyArgs& a, std::ostream& out) {
    std::optional<Operator> extra;
    if (!a.state_file.empty()) extra = load_operator(a.state_file);
    const VerifyReport report = run_verification(g.seed, a.sizes, extra);

    std::string data;
    if (g.csv()) {
        data = "suite,passed,cases,violations,worst\n";
        for (const auto& s : report.suites) {
            data += fmt::format("{},{},{},{},{}\n", s.name, s.passed ? "true" : "false", s.cases,
                                s.violations, num(s.worst));
        }
    } else {
        data = dump(Json(report));
    }
    std::string summary = report.all_passed() ? "verify: all suites passed" : "verify: FAILED";
    for (const auto& s : report.suites)
        if (!s.passed) summary += " " + s.name;
    emit(g, data, summary, out);
    return report.all_passed() ? kSuccess : kFailure;
}

}  // namespace

double parse_angle(const std::string& text) {
    std::string s = trim_lower(text);
    if (s.empty()) throw UsageError("empty angle");
    const auto pos = s.find("pi");
    if (pos == std::string::npos) return parse_ratio(s);

    std::string coef = s.substr(0, pos);
    std::string rest = s.substr(pos + 2);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    double c = 1.0;
    if (coef == "-") c = -1.0;
    else if (coef == "+" || coef.empty()) c = 1.0;
    else c = parse_ratio(coef);
    double d = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') throw UsageError("malformed angle '" + text + "'");
        d = parse_number(rest.substr(1));
        if (d == 0.0) throw UsageError("division by zero in '" + text + "'");
    }
    return c * std::numbers::pi / d;
}

std::vector<double> parse_angle_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (trim_lower(item).empty()) throw UsageError("empty entry in angle list '" + text + "'");
        out.push_back(parse_angle(item));
    }
    return out;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw UsageError("grid must be start:stop:points, got '" + text + "'");
    const double start = parse_angle(parts[0]);
    const double stop = parse_angle(parts[1]);
    const double pts = parse_number(trim_lower(parts[2]));
    if (pts < 2 || pts != std::floor(pts) || pts > 1e7) {
        throw UsageError("grid needs an integer number of points >= 2");
    }
    const auto n = static_cast<std::size_t>(pts);
    std::vector<double> grid(n);
    for (std::size_t k = 0; k < n; ++k)
        grid[k] = start + (stop - start) * static_cast<double>(k) / static_cast<double>(n - 1);
    return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement witness toolkit: correlation matrices, CHSH and EPR-Reid criteria"};
    app.name("entwit");
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--seed", g.seed, "Random seed for sampling commands");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", g.out_path, "Output file (written atomically); stdout if omitted");
    app.add_option("--hbar", g.hbar_text, "Value of hbar, or 'si'");

    CorrmatArgs corr;
    auto* corrmat = app.add_subcommand("corrmat", "Joint outcome probabilities in a local basis pair");
    corrmat->fallthrough();
    corrmat->add_option("--state", corr.state, "phi_plus | classical | werner:P | file:PATH");
    corrmat->add_option("--basis", corr.basis, "original | hadamard");

    BellScanArgs scan;
    auto* bell = app.add_subcommand("bell-scan", "Correlation curves <a_theta_a (x) b_theta_b>");
    bell->fallthrough();
    bell->add_option("--state", scan.state, "phi_plus | classical | werner:P | file:PATH");
    bell->add_option("--theta-a", scan.theta_a, "Comma-separated angles for subsystem a");
    bell->add_option("--grid", scan.grid, "theta_b grid start:stop:points");

    ChshArgs chsh;
    auto* chsh_cmd = app.add_subcommand("chsh", "Evaluate the CHSH criterion");
    chsh_cmd->fallthrough();
    chsh_cmd->add_option("--state", chsh.state, "phi_plus | classical | werner:P | file:PATH");
    chsh_cmd->add_option("--settings", chsh.settings, "a1,a2,b1,b2 | green | yellow");
    chsh_cmd->add_option("--sample", chsh.sample, "Simulated shots per setting (0 = exact)");
    chsh_cmd->add_option("--margin", chsh.margin, "Verdict margin above 2 (exact mode)");

    EprArgs epr;
    auto* epr_cmd = app.add_subcommand("epr-reid", "Evaluate the EPR-Reid criterion");
    epr_cmd->fallthrough();
    epr_cmd->add_option("--w", epr.w, "Pump waist");
    epr_cmd->add_option("--L", epr.L, "Crystal length");
    epr_cmd->add_option("--lambda", epr.lambda, "Pump wavelength");
    epr_cmd->add_option("--alpha", epr.alpha, "Phase-matching constant (default 0.455)");
    epr_cmd->add_option("--Lc", epr.Lc, "Transverse coherence length (omit for a coherent pump)");
    epr_cmd->add_option("--config", epr.config, "SPDC parameters as JSON");
    epr_cmd->add_option("--dxm", epr.dxm, "Width of x- (widths mode)");
    epr_cmd->add_option("--dpp", epr.dpp, "Width of p+ (widths mode)");
    epr_cmd->add_option("--dxp", epr.dxp, "Width of x+ (widths mode)");
    epr_cmd->add_option("--dpm", epr.dpm, "Width of p- (widths mode)");
    epr_cmd->add_option("--sample", epr.sample, "Simulated pairs per basis (0 = closed form)");
    epr_cmd->add_option("--pdf-grid", epr.pdf_grid, "Emit joint densities on an N x N grid");
    epr_cmd->add_option("--margin", epr.margin, "Relative verdict margin (closed form)");
    epr_cmd->add_option("--samples-out", epr.samples_out, "Prefix for raw sample CSV files");

    VerifyArgs ver;
    auto* verify = app.add_subcommand("verify", "Run the separability and Tsirelson property suites");
    verify->fallthrough();
    verify->add_option("--ensembles", ver.sizes.ensembles);
    verify->add_option("--quads", ver.sizes.quads_per_ensemble);
    verify->add_option("--identity-quads", ver.sizes.identity_quads);
    verify->add_option("--mixtures", ver.sizes.mixtures);
    verify->add_option("--samples", ver.sizes.samples);
    verify->add_option("--states", ver.sizes.states);
    verify->add_option("--grid-points", ver.sizes.grid_points);
    verify->add_option("--state-file", ver.state_file, "Also validate this operator as a state");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (corrmat->parsed()) return cmd_corrmat(g, corr, out);
        if (bell->parsed()) return cmd_bell_scan(g, scan, out);
        if (chsh_cmd->parsed()) return cmd_chsh(g, chsh, out);
        if (epr_cmd->parsed()) return cmd_epr_reid(g, epr, out);
        if (verify->parsed()) {
            const auto& s = ver.sizes;
            if (s.ensembles < 0 || s.quads_per_ensemble < 0 || s.identity_quads < 0 ||
                s.mixtures < 0 || s.samples < 2 || s.states < 0 || s.grid_points < 2) {
                throw UsageError("verify sizes must be nonnegative (samples and grid-points >= 2)");
            }
            return cmd_verify(g, ver, out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

}  // namespace entwit::cli
