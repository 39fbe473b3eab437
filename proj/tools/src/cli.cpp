#include "nilflat/cli.hpp"

#include "nilflat/certify.hpp"
#include "nilflat/error.hpp"
#include "nilflat/io.hpp"
#include "nilflat/lemma.hpp"
#include "nilflat/malcev.hpp"
#include "nilflat/submersion.hpp"
#include "nilflat/tower.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

namespace nilflat::cli {

using json = nlohmann::ordered_json;

namespace {

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse:
        case ErrorKind::Io:
            return kIoOrParse;
        case ErrorKind::BoundViolated:
        case ErrorKind::BudgetNotMet:
            return kBoundViolation;
        default:
            return kInvalidMath;
    }
}

template <class F>
CommandResult guarded(F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        CommandResult r;
        r.exit_code = exit_code_for(e.kind());
        r.diagnostic = std::string(to_string(e.kind())) + ": " + e.what();
        return r;
    }
}

void emit(CommandResult& r, const std::string& out, std::string text) {
    if (!out.empty()) io::write_file(out, text);
    r.output = std::move(text);
}

json number_or_null(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json config_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["inputs"] = c.inputs;
    j["metric"] = c.metric ? json(*c.metric) : json(nullptr);
    if (c.command == "curvature") {
        j["t_max"] = c.t_max;
        j["t_min"] = c.t_min;
        j["t_points"] = c.t_points;
        j["samples"] = c.samples;
    }
    if (c.command == "certify") j["eps"] = c.eps;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["format"] = c.format;
    j["out"] = c.out;
    return j;
}

NilLattice load_lattice(const std::string& path) { return NilLattice(io::parse_algebra(io::read_file(path))); }

Mat load_metric(const std::optional<std::string>& path, std::size_t n) {
    if (!path) return Mat::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Mat g = io::parse_metric(io::read_file(*path));
    if (static_cast<std::size_t>(g.rows()) != n) {
        throw Error(ErrorKind::DimensionMismatch,
                    "metric is " + std::to_string(g.rows()) + "x" + std::to_string(g.rows()) +
                        ", algebra has dim " + std::to_string(n));
    }
    return g;
}

Mat to_double(const MatZ& m, std::size_t n) {
    const auto ni = static_cast<Eigen::Index>(n);
    Mat out(ni, ni);
    for (Eigen::Index r = 0; r < ni; ++r) {
        for (Eigen::Index c = 0; c < ni; ++c) {
            out(r, c) = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].get_d();
        }
    }
    return out;
}

std::string witness_text(const ValidationReport& r) {
    std::string s = "(";
    for (std::size_t i = 0; i < r.witness.size(); ++i) {
        if (i) s += ',';
        s += 'e' + std::to_string(r.witness[i] + 1);
    }
    return s + ")";
}

}  // namespace

std::string version() { return NILFLAT_VERSION; }

CommandResult cmd_validate(const std::string& path) {
    return guarded([&] {
        CommandResult r;
        const NilAlgebra a = io::parse_algebra(io::read_file(path));
        std::string report;
        const auto fail = [&](const std::string& msg) {
            r.exit_code = kInvalidMath;
            r.diagnostic = report + msg;
            return r;
        };

        const ValidationReport jac = check_jacobi(a);
        if (!jac.ok) return fail("jacobi: FAIL " + jac.message + "\n");
        report += "jacobi: ok\n";

        const CentralSeries lcs = lower_central_series(a);
        report += "nilpotent: ok, class " + std::to_string(lcs.nilpotency_class) + "\n";

        const ValidationReport full = validate_algebra(a);
        if (!full.ok) return fail("structure: FAIL " + full.message + "\n");
        report += "adapted basis: ok\n";

        if (!a.has_integer_constants()) return fail("integral constants: FAIL\n");
        report += "integral constants: ok\n";

        const ValidationReport closed = lattice_closed(a);
        report += closed.ok ? "second-kind integer points closed: yes\n"
                            : "second-kind integer points closed: no, " + closed.message + "\n";
        r.diagnostic = report;
        return r;
    });
}

CommandResult cmd_peel(const std::string& path, const std::string& out) {
    return guarded([&] {
        CommandResult r;
        const BundleTower tower = peel_tower(load_lattice(path));
        emit(r, out, io::format_tower(io::tower_records(tower)));
        r.diagnostic = std::to_string(tower.length()) + "-step tower\n";
        return r;
    });
}

CommandResult cmd_extend(const std::string& base_path, const std::string& cocycle_path, const std::string& out) {
    return guarded([&] {
        CommandResult r;
        const NilLattice base = load_lattice(base_path);
        const io::CocycleRecord rec = io::parse_cocycle(io::read_file(cocycle_path));
        if (rec.base_dim != base.dim()) {
            throw Error(ErrorKind::DimensionMismatch, "cocycle base_dim " + std::to_string(rec.base_dim) +
                                                          " vs base dim " + std::to_string(base.dim()));
        }
        const ValidationReport closed = check_cocycle_closed(base.algebra(), rec.cocycle);
        if (!closed.ok) {
            r.exit_code = kInvalidMath;
            r.diagnostic = "NotClosed: witness " + witness_text(closed) + ", " + closed.message;
            return r;
        }
        const NilLattice total = extend_by_cocycle(base, rec.cocycle);
        emit(r, out, io::format_algebra(total.algebra()));
        return r;
    });
}

CommandResult cmd_extend_tower(const std::string& tower_path, const std::string& out) {
    return guarded([&] {
        CommandResult r;
        std::vector<CentralCocycle> cocycles;
        for (const auto& rec : io::parse_tower(io::read_file(tower_path))) cocycles.push_back(rec.cocycle);
        emit(r, out, io::format_algebra(rebuild_from_tower(cocycles).algebra()));
        return r;
    });
}

CommandResult cmd_curvature(const RunConfig& config) {
    return guarded([&] {
        if (config.inputs.size() != 1) throw Error(ErrorKind::InvalidArgument, "curvature takes one algebra file");
        if (!(config.t_min > 0.0) || config.t_max < config.t_min) {
            throw Error(ErrorKind::InvalidArgument, "need t_max >= t_min > 0");
        }
        if (config.samples < 1) throw Error(ErrorKind::InvalidArgument, "need at least one sample");
        if (config.format != "csv" && config.format != "json") {
            throw Error(ErrorKind::InvalidArgument, "format must be csv or json");
        }
        CommandResult r;
        const NilLattice lattice = load_lattice(config.inputs.front());
        const std::size_t n = lattice.dim();
        if (n < 2) throw Error(ErrorKind::InvalidArgument, "curvature needs dim >= 2");
        const LeftInvariantMetric g(load_metric(config.metric, n));

        const TowerStep step = peel_step(lattice);
        Vec z(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) z[static_cast<Eigen::Index>(i)] = step.choice.z[i].get_d();
        const SubmersionSplit split = make_split(g, z);

        // Base diameter: the lower levels at t = 1, measured in the tower frame.
        const BundleTower tower = peel_tower(lattice);
        const Mat b = to_double(tower.top_basis, n);
        const TowerFrame frame = tower_frame(LeftInvariantMetric(b * g.gram() * b.transpose()));
        double base_diameter = 0.0;
        for (std::size_t k = 0; k + 1 < n; ++k) base_diameter += 0.5 * frame.fiber_lengths[k];

        LemmaScanConfig scan;
        scan.t_grid = geometric_grid(config.t_max, config.t_min, config.t_points);
        scan.samples = config.samples;
        scan.seed = config.seed;
        scan.threads = config.threads;
        scan.base_diameter = base_diameter;
        const DecayReport rep = lemma_scan_unchecked(RealAlgebra(lattice.algebra()), g, split, scan);

        json summary;
        summary["tool"] = "nilflat";
        summary["version"] = version();
        summary["config"] = config_json(config);
        summary["C"] = rep.C;
        summary["exponent_fit"] = number_or_null(rep.exponent_fit);
        summary["defect_exponent_fit"] = number_or_null(rep.defect_exponent_fit);
        summary["seed"] = rep.seed;
        summary["sample_count"] = rep.sample_count;
        summary["base_sup_K"] = rep.base_sup_K;
        summary["sup_A"] = rep.sup_A;
        summary["sup_DA"] = rep.sup_DA;
        summary["base_diameter"] = base_diameter;
        summary["violations"] = rep.violations;
        summary["notes"] = "C and the diameter bound are explicit constructions; C is sampled with a 2x safety factor";
        r.summary = summary.dump(2) + "\n";

        const std::string csv = io::format_decay_csv(rep);
        if (config.format == "csv") {
            emit(r, config.out, csv);
            if (!config.out.empty()) io::write_file(config.out + ".summary.json", r.summary);
        } else {
            json doc = summary;
            json rows = json::array();
            for (std::size_t i = 0; i < rep.t_grid.size(); ++i) {
                json row;
                row["t"] = rep.t_grid[i];
                row["sup_abs_K"] = rep.sup_abs_K[i];
                row["sup_defect"] = rep.sup_defect[i];
                row["base_sup_K"] = rep.base_sup_K;
                row["bound"] = rep.bound[i];
                row["diam_bound"] = rep.diam_bound[i];
                rows.push_back(std::move(row));
            }
            doc["rows"] = std::move(rows);
            emit(r, config.out, doc.dump(2) + "\n");
        }
        if (rep.violations > 0) {
            r.exit_code = kBoundViolation;
            r.diagnostic = "BoundViolated: " + std::to_string(rep.violations) + " t values broke the bound\n";
        }
        return r;
    });
}

CommandResult cmd_certify(const RunConfig& config) {
    return guarded([&] {
        if (config.inputs.size() != 1) throw Error(ErrorKind::InvalidArgument, "certify takes one algebra file");
        if (!(config.eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
        CommandResult r;
        const NilLattice lattice = load_lattice(config.inputs.front());
        const std::size_t n = lattice.dim();
        const BundleTower tower = peel_tower(lattice);
        const Mat b = to_double(tower.top_basis, n);
        const LeftInvariantMetric seed_metric(b * load_metric(config.metric, n) * b.transpose());

        CertifyConfig cc;
        cc.eps = config.eps;
        cc.seed = config.seed;
        cc.threads = config.threads;
        const CertifyResult res = certify_almost_flat(tower, seed_metric, cc);

        json doc;
        doc["tool"] = "nilflat";
        doc["version"] = version();
        doc["config"] = config_json(config);
        doc["schedule"] = res.schedule;
        doc["t_top"] = res.schedule.empty() ? 1.0 : res.schedule.back();
        doc["level_sup_K"] = res.level_sup_K;
        doc["fiber_lengths"] = res.fiber_lengths;
        doc["achieved_sup_K"] = res.achieved_sup_K;
        doc["diam_bound"] = res.diam_bound;
        doc["rounds"] = res.rounds;
        doc["verify_samples"] = cc.verify_samples;
        emit(r, config.out, doc.dump(2) + "\n");
        r.summary = r.output;
        return r;
    });
}

CommandResult run(const RunConfig& config) {
    const auto need = [&](std::size_t k) {
        if (config.inputs.size() != k) {
            CommandResult r;
            r.exit_code = kIoOrParse;
            r.diagnostic = config.command + " expects " + std::to_string(k) + " input file(s)";
            return std::optional<CommandResult>(r);
        }
        return std::optional<CommandResult>();
    };
    if (config.command == "validate") {
        if (auto bad = need(1)) return *bad;
        return cmd_validate(config.inputs[0]);
    }
    if (config.command == "peel") {
        if (auto bad = need(1)) return *bad;
        return cmd_peel(config.inputs[0], config.out);
    }
    if (config.command == "extend") {
        if (config.tower) return cmd_extend_tower(*config.tower, config.out);
        if (auto bad = need(2)) return *bad;
        return cmd_extend(config.inputs[0], config.inputs[1], config.out);
    }
    if (config.command == "curvature") return cmd_curvature(config);
    if (config.command == "certify") return cmd_certify(config);
    CommandResult r;
    r.exit_code = kIoOrParse;
    r.diagnostic = "unknown command " + config.command;
    return r;
}

int main_entry(int argc, char** argv) {
    CLI::App app{"nilflat: nilmanifolds as iterated circle bundles"};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);

    RunConfig cfg;
    std::string tower_path;
    const auto common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out, "Output path (default: stdout)");
        sub->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
        sub->add_option("--threads", cfg.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    };

    auto* validate = app.add_subcommand("validate", "Check an algebra file");
    validate->add_option("input", cfg.inputs, "Algebra file")->required()->expected(1);

    auto* peel = app.add_subcommand("peel", "Peel a lattice into a circle-bundle tower");
    peel->add_option("input", cfg.inputs, "Algebra file")->required()->expected(1);
    common(peel);

    auto* extend = app.add_subcommand("extend", "Central extension of a base by a cocycle");
    extend->add_option("inputs", cfg.inputs, "Base algebra file and cocycle file")->expected(0, 2);
    extend->add_option("--tower", tower_path, "Rebuild the top lattice from a tower file");
    common(extend);

    auto* curvature = app.add_subcommand("curvature", "Scan curvature of the canonical variation");
    curvature->add_option("input", cfg.inputs, "Algebra file")->required()->expected(1);
    curvature->add_option("--metric", cfg.metric, "Metric file (default: identity)");
    curvature->add_option("--t-max", cfg.t_max)->capture_default_str();
    curvature->add_option("--t-min", cfg.t_min)->capture_default_str();
    curvature->add_option("--t-points", cfg.t_points)->capture_default_str();
    curvature->add_option("--samples", cfg.samples)->capture_default_str();
    curvature->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    common(curvature);

    auto* certify = app.add_subcommand("certify", "Find an almost-flat fiber schedule");
    certify->add_option("input", cfg.inputs, "Algebra file")->required()->expected(1);
    certify->add_option("--metric", cfg.metric, "Seed metric file (default: identity)");
    certify->add_option("--eps", cfg.eps)->capture_default_str();
    common(certify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kIoOrParse;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (!tower_path.empty()) cfg.tower = tower_path;

    const CommandResult r = run(cfg);
    if (cfg.out.empty() && !r.output.empty()) std::cout << r.output;
    if (!r.diagnostic.empty()) {
        const bool to_stdout = r.exit_code == kOk && !(cfg.out.empty() && !r.output.empty());
        (to_stdout ? std::cout : std::cerr) << r.diagnostic << (r.diagnostic.back() == '\n' ? "" : "\n");
    }
    return r.exit_code;
}

}  // namespace nilflat::cli
