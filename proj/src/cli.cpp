#include "ballgreen/cli.hpp"

#include "ballgreen/greens.hpp"
#include "ballgreen/suite.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>

namespace ballgreen::cli {

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (item.empty() || std::isspace(static_cast<unsigned char>(item.front())))
            throw std::invalid_argument("malformed number list '" + text + "'");
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end != item.c_str() + item.size() || errno == ERANGE || !std::isfinite(v))
            throw std::invalid_argument("malformed number '" + item + "'");
        out.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

namespace {

struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    for (double v : parse_list(text)) {
        if (v != std::floor(v) || v < 1 || v > 10) throw usage_error("--dims entries must be integers in 1..10");
        dims.push_back(static_cast<int>(v));
    }
    return dims;
}

Vector to_vector(const std::vector<double>& v) {
    return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Vector parse_point(const std::string& flag, const std::string& text, int dim) {
    std::vector<double> v;
    try {
        v = parse_list(text);
    } catch (const std::invalid_argument& e) {
        throw usage_error(flag + ": " + e.what());
    }
    if (static_cast<int>(v.size()) != dim)
        throw usage_error(flag + " has " + std::to_string(v.size()) + " components but --dim is " + std::to_string(dim));
    return to_vector(v);
}

std::string json_vector(const Vector& v) {
    std::string s = "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + json_number(v[i]);
    return s + "]";
}

std::string json_flags(std::uint32_t flags) {
    std::string s = "[";
    bool first = true;
    for (const auto& name : flag_names(flags)) {
        s += (first ? "\"" : ", \"") + name + "\"";
        first = false;
    }
    return s + "]";
}

// Problem shared by eval and grid.
struct Problem {
    int dim = 0;
    double radius = 1.0;
    Vector z;
    std::optional<Vector> moment;
    EegForm form = EegForm::automatic;

    GreenEval<double> evaluate(const Vector& x) const {
        const BallSpec<double> ball(dim, radius);
        if (moment) return greens_eeg_radius(ball, Dipole<double>{z, *moment}, x, form);
        return greens_poisson_radius(ball, z, x);
    }

    std::string header_json() const {
        std::string s = "\"problem\": \"";
        s += moment ? "eeg" : "poisson";
        s += "\", \"dim\": " + std::to_string(dim) + ", \"radius\": " + json_number(radius) + ", \"z\": " + json_vector(z);
        if (moment) s += ", \"moment\": " + json_vector(*moment);
        return s;
    }
};

struct ProblemFlags {
    int dim = 0;
    double radius = 1.0;
    std::string z, moment, form = "auto";

    void add_to(CLI::App* cmd) {
        cmd->add_option("--dim", dim, "Dimension n >= 1")->required();
        cmd->add_option("--radius", radius, "Ball radius R > 0");
        cmd->add_option("--z", z, "Source position, comma-separated")->required();
        cmd->add_option("--moment", moment, "Dipole moment; selects the EEG problem");
        cmd->add_option("--form", form, "EEG form: auto, integral or expanded");
    }

    Problem build(CLI::App* cmd) const {
        if (dim < 1) throw usage_error("--dim must be >= 1");
        if (!(radius > 0.0) || !std::isfinite(radius)) throw usage_error("--radius must be positive");
        Problem p;
        p.dim = dim;
        p.radius = radius;
        p.z = parse_point("--z", z, dim);
        if (p.z.norm() >= radius) throw usage_error("--z must lie strictly inside the ball");
        if (cmd->count("--moment")) {
            p.moment = parse_point("--moment", moment, dim);
            if (!(p.moment->norm() > 0.0)) throw usage_error("--moment must be nonzero");
        }
        if (form == "auto") p.form = EegForm::automatic;
        else if (form == "integral") p.form = EegForm::integral;
        else if (form == "expanded") p.form = EegForm::expanded;
        else throw usage_error("--form must be auto, integral or expanded");
        return p;
    }
};

int eval_cmd(const Problem& p, const Vector& x, std::ostream& out, std::ostream& err) {
    if (x.norm() > p.radius * (1.0 + detail::ball_slack<double>())) {
        err << "error: --x must lie in the closed ball\n";
        return exit_usage;
    }
    GreenEval<double> g;
    try {
        g = p.evaluate(x);
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_evaluation;
    }
    out << "{" << p.header_json() << ", \"x\": " << json_vector(x) << ", \"value\": " << json_number(g.value)
        << ", \"method\": \"" << to_string(g.method) << "\", \"flags\": " << json_flags(g.flags) << "}\n";
    return exit_ok;
}

struct GridSpec {
    std::vector<int> resolution;
    std::vector<double> lo, hi;
};

GridSpec parse_grid(const std::string& resolution, const std::string& bbox, int dim, double radius) {
    if (dim > 3) throw usage_error("grid export is limited to --dim <= 3");
    GridSpec g;
    std::vector<double> res;
    try {
        res = parse_list(resolution);
    } catch (const std::invalid_argument& e) {
        throw usage_error(std::string("--resolution: ") + e.what());
    }
    if (res.size() == 1) res.assign(dim, res[0]);
    if (static_cast<int>(res.size()) != dim) throw usage_error("--resolution needs 1 or --dim entries");
    for (double r : res) {
        if (r != std::floor(r) || r < 2 || r > 1e6) throw usage_error("--resolution entries must be integers >= 2");
        g.resolution.push_back(static_cast<int>(r));
    }
    std::vector<double> box;
    if (bbox.empty()) {
        for (int i = 0; i < dim; ++i) box.insert(box.end(), {-radius, radius});
    } else {
        try {
            box = parse_list(bbox);
        } catch (const std::invalid_argument& e) {
            throw usage_error(std::string("--bbox: ") + e.what());
        }
        if (box.size() == 2) {
            const std::vector<double> pair = box;
            for (int i = 1; i < dim; ++i) box.insert(box.end(), pair.begin(), pair.end());
        }
    }
    if (static_cast<int>(box.size()) != 2 * dim) throw usage_error("--bbox needs lo,hi or one lo,hi pair per axis");
    for (int i = 0; i < dim; ++i) {
        if (!(box[2 * i] < box[2 * i + 1])) throw usage_error("--bbox requires lo < hi on every axis");
        g.lo.push_back(box[2 * i]);
        g.hi.push_back(box[2 * i + 1]);
    }
    return g;
}

int grid_cmd(const Problem& p, const GridSpec& g, bool csv, std::ostream& out, std::ostream& err) {
    const int dim = p.dim;
    std::size_t total = 1;
    for (int r : g.resolution) total *= static_cast<std::size_t>(r);

    if (csv) {
        for (int i = 0; i < dim; ++i) out << "x" << (i + 1) << ",";
        out << "value,flags\n";
    } else {
        out << "{" << p.header_json() << ", \"resolution\": [";
        for (int i = 0; i < dim; ++i) out << (i ? ", " : "") << g.resolution[i];
        out << "], \"rows\": [";
    }
    // Row-major: the last axis varies fastest.
    std::vector<int> idx(dim, 0);
    for (std::size_t node = 0; node < total; ++node) {
        std::size_t rest = node;
        for (int i = dim - 1; i >= 0; --i) {
            idx[i] = static_cast<int>(rest % g.resolution[i]);
            rest /= g.resolution[i];
        }
        Vector x(dim);
        for (int i = 0; i < dim; ++i) {
            const double t = static_cast<double>(idx[i]) / (g.resolution[i] - 1);
            x[i] = idx[i] == g.resolution[i] - 1 ? g.hi[i] : g.lo[i] + t * (g.hi[i] - g.lo[i]);
        }
        std::optional<GreenEval<double>> value;
        if (x.norm() <= p.radius * (1.0 + detail::ball_slack<double>())) {
            try {
                value = p.evaluate(x);
            } catch (const source_coincidence_error&) {
            } catch (const centered_source_error& e) {
                err << "error: " << e.what() << "\n";
                return exit_evaluation;
            }
        }
        if (csv) {
            for (int i = 0; i < dim; ++i) out << json_number(x[i]) << ",";
            if (value) {
                out << json_number(value->value) << ",";
                const auto names = flag_names(value->flags);
                for (std::size_t k = 0; k < names.size(); ++k) out << (k ? "|" : "") << names[k];
            } else {
                out << ",";
            }
            out << "\n";
        } else {
            out << (node ? ",\n  " : "\n  ") << "{\"x\": " << json_vector(x) << ", \"value\": "
                << (value ? json_number(value->value) : "null") << ", \"flags\": " << json_flags(value ? value->flags : 0)
                << "}";
        }
    }
    if (!csv) out << "\n]}\n";
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Neumann Green's functions of the Laplacian on n-balls", "ballgreen"};
    app.require_subcommand(1);

    ProblemFlags eval_flags;
    std::string eval_x;
    auto* eval = app.add_subcommand("eval", "Evaluate a Green's function at one point");
    eval_flags.add_to(eval);
    eval->add_option("--x", eval_x, "Evaluation point, comma-separated")->required();

    ProblemFlags grid_flags;
    std::string resolution, bbox, format = "csv";
    auto* grid = app.add_subcommand("grid", "Evaluate on a regular grid (dim <= 3)");
    grid_flags.add_to(grid);
    grid->add_option("--resolution", resolution, "Nodes per axis (one value or one per axis)")->required();
    grid->add_option("--bbox", bbox, "lo,hi or lo1,hi1,...; defaults to [-R, R] per axis");
    grid->add_option("--format", format, "csv or json");

    std::uint64_t seed = 42;
    std::string dims = "1,2,3,4,5,7";
    QuadratureConfig qcfg;
    auto* verify = app.add_subcommand("verify", "Run the verification suite");
    verify->add_option("--seed", seed, "Sampler seed");
    verify->add_option("--dims", dims, "Comma-separated dimensions in 1..10");
    verify->add_option("--abs-tol", qcfg.abs_tol, "Oracle quadrature absolute tolerance");
    verify->add_option("--rel-tol", qcfg.rel_tol, "Oracle quadrature relative tolerance");
    verify->add_option("--max-subdivisions", qcfg.max_subdivisions, "Oracle quadrature panel budget");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (eval->parsed()) {
            const Problem p = eval_flags.build(eval);
            return eval_cmd(p, parse_point("--x", eval_x, p.dim), out, err);
        }
        if (grid->parsed()) {
            const Problem p = grid_flags.build(grid);
            if (format != "csv" && format != "json") throw usage_error("--format must be csv or json");
            return grid_cmd(p, parse_grid(resolution, bbox, p.dim, p.radius), format == "csv", out, err);
        }
        const std::vector<int> dim_list = parse_dims(dims);
        try {
            qcfg.validate();
        } catch (const std::invalid_argument& e) {
            throw usage_error(e.what());
        }
        const SuiteReport report = run_suite(seed, dim_list, qcfg);
        out << to_json(report);
        return report.pass ? exit_ok : exit_suite_failure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

} // namespace ballgreen::cli
