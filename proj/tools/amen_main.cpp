// amen: rank attributed-graph neighborhoods by normality, inspect their
// focus attributes, score classical baselines, and run seeded perturbation
// experiments with average-precision reports.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "amen/baselines.hpp"
#include "amen/eval.hpp"
#include "amen/focus.hpp"
#include "amen/graph.hpp"
#include "amen/report_io.hpp"
#include "amen/synthetic.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using amen::AttributedGraph;
using amen::NamedNeighborhood;

struct CommonInput {
    std::string graph_path;
    std::string attrs_path;
    std::string attrs_format = "sparse";
    bool no_rescale = false;
    bool allow_isolated = false;
    std::string neighborhoods_path;
    bool egonets = false;
};

struct Loaded {
    AttributedGraph graph;
    std::vector<NamedNeighborhood> neighborhoods;
    amen::IngestReport ingest;
};

void add_common_input(CLI::App* cmd, CommonInput& in, bool need_neighborhoods = true) {
    cmd->add_option("--graph", in.graph_path, "edge list file")->required();
    cmd->add_option("--attrs", in.attrs_path, "attribute file")->required();
    cmd->add_option("--attrs-format", in.attrs_format, "attribute file layout")
        ->check(CLI::IsMember({"sparse", "dense"}))
        ->capture_default_str();
    cmd->add_flag("--no-rescale", in.no_rescale,
                  "keep attribute values as-is (they must already be in [0,1])");
    cmd->add_flag("--allow-isolated", in.allow_isolated,
                  "accept attribute rows for nodes missing from the edge list");
    if (need_neighborhoods) {
        auto* nfile = cmd->add_option("--neighborhoods", in.neighborhoods_path,
                                      "membership file: id followed by member nodes per line");
        auto* egos = cmd->add_flag("--egonets", in.egonets, "use every node's egonet");
        nfile->excludes(egos);
    }
}

Loaded load_input(const CommonInput& in, bool need_neighborhoods = true) {
    amen::IngestOptions opt;
    opt.rescale = !in.no_rescale;
    opt.allow_isolated = in.allow_isolated;
    opt.attribute_format = in.attrs_format == "dense" ? amen::AttributeFormat::dense_csv
                                                      : amen::AttributeFormat::sparse_triples;
    amen::IngestReport ingest;
    Loaded out{amen::load_graph_files(in.graph_path, in.attrs_path, opt, &ingest), {}, {}};
    out.ingest = std::move(ingest);
    for (const auto& w : out.ingest.warnings) std::cerr << "warning: " << w << "\n";

    if (!need_neighborhoods) return out;
    // explicit membership file wins over --egonets
    if (!in.neighborhoods_path.empty())
        out.neighborhoods = amen::load_neighborhood_file(in.neighborhoods_path, out.graph);
    else if (in.egonets)
        out.neighborhoods = amen::all_egonets(out.graph);
    else
        throw amen::InputError("one of --neighborhoods or --egonets is required");
    return out;
}

std::uint64_t seed_or_env(std::optional<std::uint64_t> seed_flag) {
    if (seed_flag) return *seed_flag;
    if (const char* env = std::getenv("AMEN_SEED")) return std::strtoull(env, nullptr, 10);
    return 1;
}

std::vector<double> parse_grid(const std::string& spec) {
    // "a:b:step", a comma list, or a single value
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double a, b, step;
        char c1, c2;
        std::istringstream in(spec);
        if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
            throw amen::InputError("bad --grid, expected start:end:step");
        for (double v = a; v <= b + 1e-12; v += step) out.push_back(v);
    } else {
        std::string tok;
        std::istringstream in(spec);
        while (std::getline(in, tok, ',')) {
            if (tok.empty()) continue;
            try {
                out.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw amen::InputError("bad --grid value '" + tok + "'");
            }
        }
    }
    if (out.empty()) throw amen::InputError("empty --grid");
    for (double v : out)
        if (v < 0.0 || v > 1.0) throw amen::InputError("grid intensities must be in [0,1]");
    return out;
}

// --- run manifest ---------------------------------------------------------

struct ManifestWriter {
    std::string command;
    std::vector<std::string> argv;
    std::uint64_t seed = 0;
    bool seeded = false;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void write(const std::string& base_output) const {
        nlohmann::ordered_json doc;
        doc["tool"] = "amen";
        doc["version"] = kVersion;
        doc["command"] = command;
        doc["argv"] = argv;
        if (seeded) doc["seed"] = seed;
        doc["inputs"] = nlohmann::ordered_json::object();
        for (const auto& path : inputs) doc["inputs"][path] = amen::digest_file(path);
        doc["outputs"] = outputs;
        for (const auto& [key, value] : extra.items()) doc[key] = value;
        const std::time_t now = std::time(nullptr);
        char stamp[32];
        std::strftime(stamp, sizeof stamp, "%FT%TZ", std::gmtime(&now));
        doc["wall_clock_utc"] = stamp;
        doc["duration_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ofstream out(base_output + ".manifest.json");
        out << doc.dump(2) << "\n";
    }
};

void emit(const std::string& output_path, const std::string& contents, ManifestWriter& manifest) {
    if (output_path.empty()) {
        std::cout << contents;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw amen::InputError("cannot write " + output_path);
    out << contents;
    manifest.outputs.push_back(output_path);
}

// --- subcommands ----------------------------------------------------------

struct RankArgs {
    CommonInput input;
    std::string norm = "l1";
    std::size_t k = 0;
    std::string similarity = "dot";
    unsigned jobs = 1;
    std::string output;
    std::string format = "csv";
    int precision = 6;
};

int run_rank(const RankArgs& args, ManifestWriter& manifest) {
    auto norm = amen::norm_from_string(args.norm);
    auto sim = amen::similarity_from_string(args.similarity);
    if (!norm || !sim) throw amen::InputError("bad --norm or --similarity");
    if (*norm == amen::NormKind::topk && args.k == 0)
        throw amen::InputError("--k is required with --norm topk");

    Loaded loaded = load_input(args.input);
    manifest.inputs = {args.input.graph_path, args.input.attrs_path};
    if (!args.input.neighborhoods_path.empty())
        manifest.inputs.push_back(args.input.neighborhoods_path);

    auto ranked = amen::rank_neighborhoods(loaded.graph, loaded.neighborhoods, *sim, *norm,
                                           args.k, args.jobs);
    amen::RankingOutputOptions opt{args.precision};
    if (args.format == "json") {
        emit(args.output, amen::ranking_json(loaded.graph, ranked, opt), manifest);
    } else {
        std::ostringstream csv;
        amen::write_ranking_csv(loaded.graph, ranked, csv, opt);
        emit(args.output, csv.str(), manifest);
    }
    return 0;
}

struct FocusArgs {
    CommonInput input;
    std::string similarity = "dot";
    std::size_t top = 0; // 0 = all supported attributes
    std::string output;
    std::string format = "csv";
    int precision = 6;
};

int run_focus(const FocusArgs& args, ManifestWriter& manifest) {
    auto sim = amen::similarity_from_string(args.similarity);
    if (!sim) throw amen::InputError("bad --similarity");
    Loaded loaded = load_input(args.input);
    manifest.inputs = {args.input.graph_path, args.input.attrs_path};
    if (!args.input.neighborhoods_path.empty())
        manifest.inputs.push_back(args.input.neighborhoods_path);

    struct Row {
        std::string id;
        std::string attr;
        double x, xi, xe;
    };
    std::vector<Row> rows;
    std::vector<std::pair<std::string, std::string>> failures; // id -> status

    for (const auto& named : loaded.neighborhoods) {
        try {
            auto nb = amen::boundary_of(loaded.graph, named.members);
            auto rv = amen::relevance_vector(loaded.graph, nb, *sim);
            if (rv.attrs.empty()) {
                failures.emplace_back(named.id, "no focus found");
                continue;
            }
            std::vector<std::size_t> order(rv.attrs.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return rv.x[a] > rv.x[b]; });
            std::size_t take = order.size();
            if (args.top > 0) take = std::min(take, args.top);
            for (std::size_t i = 0; i < take; ++i) {
                const std::size_t at = order[i];
                rows.push_back({named.id, loaded.graph.attribute_name(rv.attrs[at]), rv.x[at],
                                rv.x_internal_hat[at], rv.x_external_hat[at]});
            }
        } catch (const amen::Error& e) {
            failures.emplace_back(named.id, e.what());
        }
    }

    if (args.format == "json") {
        nlohmann::ordered_json doc;
        doc["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : rows)
            doc["rows"].push_back({{"neighborhood_id", r.id},
                                   {"attribute", r.attr},
                                   {"x", r.x},
                                   {"x_internal_hat", r.xi},
                                   {"x_external_hat", r.xe},
                                   {"supported", true}});
        doc["failures"] = nlohmann::ordered_json::array();
        for (const auto& [id, what] : failures)
            doc["failures"].push_back({{"neighborhood_id", id}, {"status", what}});
        emit(args.output, doc.dump(2) + "\n", manifest);
    } else {
        std::ostringstream csv;
        csv << "neighborhood_id,attribute,x,x_internal_hat,x_external_hat,supported,status\n";
        for (const auto& r : rows)
            csv << amen::csv_field(r.id) << ',' << amen::csv_field(r.attr) << ','
                << amen::format_number(r.x, args.precision) << ','
                << amen::format_number(r.xi, args.precision) << ','
                << amen::format_number(r.xe, args.precision) << ",1,\n";
        for (const auto& [id, what] : failures)
            csv << amen::csv_field(id) << ",,,,,0," << amen::csv_field(what) << "\n";
        emit(args.output, csv.str(), manifest);
    }
    return 0;
}

struct EvalArgs {
    CommonInput input;
    bool synthetic = false;
    amen::SyntheticConfig gen;
    std::string mode = "both";
    std::string grid = "0.05:0.50:0.05";
    std::optional<std::uint64_t> seed;
    double anomaly_frac = 0.05;
    std::size_t size_min = 30;
    std::size_t size_max = 100;
    std::string methods = "amen_l1,amen_l2,avg_degree,cut_ratio,conductance,flake_odf,aw_ncut";
    std::string similarity = "binary-mixed";
    unsigned jobs = 1;
    std::string output;
    int precision = 6;
};

int run_eval(const EvalArgs& args, ManifestWriter& manifest) {
    auto mode = amen::mode_from_string(args.mode);
    auto sim = amen::similarity_from_string(args.similarity);
    if (!mode || !sim) throw amen::InputError("bad --mode or --similarity");

    std::vector<amen::Method> methods;
    {
        std::istringstream in(args.methods);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            auto m = amen::method_from_string(tok);
            if (!m) throw amen::InputError("unknown method '" + tok + "'");
            methods.push_back(*m);
        }
    }

    amen::PerturbationConfig cfg;
    cfg.mode = *mode;
    cfg.intensities = parse_grid(args.grid);
    cfg.anomaly_fraction = args.anomaly_frac;
    cfg.size_min = args.size_min;
    cfg.size_max = args.size_max;
    cfg.seed = seed_or_env(args.seed);
    cfg.similarity = *sim;
    cfg.jobs = args.jobs;
    manifest.seed = cfg.seed;
    manifest.seeded = true;

    amen::EvalReport report;
    if (args.synthetic) {
        amen::SyntheticConfig gen = args.gen;
        gen.seed = cfg.seed;
        gen.size_min = std::max<std::size_t>(2, args.size_min);
        gen.size_max = args.size_max;
        auto s = amen::generate_planted(gen);
        report = amen::run_experiment(s.graph, s.communities, cfg, methods);
    } else {
        if (args.input.graph_path.empty() || args.input.attrs_path.empty())
            throw amen::InputError("eval needs --graph/--attrs or --synthetic");
        Loaded loaded = load_input(args.input);
        manifest.inputs = {args.input.graph_path, args.input.attrs_path};
        if (!args.input.neighborhoods_path.empty())
            manifest.inputs.push_back(args.input.neighborhoods_path);
        report = amen::run_experiment(loaded.graph, loaded.neighborhoods, cfg, methods);
    }

    amen::RankingOutputOptions opt{args.precision};
    std::ostringstream csv;
    amen::write_eval_csv(report, csv, opt);
    emit(args.output + ".csv", csv.str(), manifest);
    emit(args.output + ".json", amen::eval_json(report, opt), manifest);
    manifest.extra["method_seconds"] = nlohmann::ordered_json::object();
    for (const auto& [m, s] : report.method_seconds)
        manifest.extra["method_seconds"][amen::to_string(m)] = s;
    return 0;
}

struct AnalyzeArgs {
    CommonInput input;
    std::string similarity = "dot";
    std::string output;
    int precision = 6;
};

int run_analyze(const AnalyzeArgs& args, ManifestWriter& manifest) {
    auto sim = amen::similarity_from_string(args.similarity);
    if (!sim) throw amen::InputError("bad --similarity");
    Loaded loaded = load_input(args.input);
    manifest.inputs = {args.input.graph_path, args.input.attrs_path};
    if (!args.input.neighborhoods_path.empty())
        manifest.inputs.push_back(args.input.neighborhoods_path);

    auto tables = amen::analyze_distributions(loaded.graph, loaded.neighborhoods, *sim);
    amen::RankingOutputOptions opt{args.precision};

    auto emit_table = [&](const char* suffix, auto&& writer) {
        std::ostringstream csv;
        writer(csv);
        emit(args.output + suffix, csv.str(), manifest);
    };
    emit_table("_positive_counts.csv", [&](std::ostream& out) {
        amen::write_distribution_csv(tables.positive_count_cdf, "positive_count", "cdf", out, opt);
    });
    emit_table("_l1_agreement.csv", [&](std::ostream& out) {
        amen::write_distribution_csv(tables.l1_agreement_ccdf, "member_fraction", "ccdf", out, opt);
    });
    emit_table("_normality_l1.csv", [&](std::ostream& out) {
        amen::write_distribution_csv(tables.normality_l1_ccdf, "normality", "ccdf", out, opt);
    });
    emit_table("_normality_l2.csv", [&](std::ostream& out) {
        amen::write_distribution_csv(tables.normality_l2_ccdf, "normality", "ccdf", out, opt);
    });
    emit_table("_attr_rank.csv", [&](std::ostream& out) {
        amen::write_kth_positive_csv(tables.kth_positive_mean, out, opt);
    });
    return 0;
}

struct BaselinesArgs {
    CommonInput input;
    std::string similarity = "dot";
    bool partition_modularity = false;
    std::string output;
    std::string format = "csv";
    int precision = 6;
};

int run_baselines(const BaselinesArgs& args, ManifestWriter& manifest) {
    auto sim = amen::similarity_from_string(args.similarity);
    if (!sim) throw amen::InputError("bad --similarity");
    Loaded loaded = load_input(args.input);
    manifest.inputs = {args.input.graph_path, args.input.attrs_path};
    if (!args.input.neighborhoods_path.empty())
        manifest.inputs.push_back(args.input.neighborhoods_path);

    const double total_volume = amen::total_weighted_volume(loaded.graph, *sim);

    struct Row {
        std::string id;
        std::optional<double> avg_degree, cut_ratio, conductance, flake_odf, aw_ncut;
        std::string error;
    };
    std::vector<Row> rows;
    for (const auto& named : loaded.neighborhoods) {
        Row row;
        row.id = named.id;
        try {
            auto nb = amen::boundary_of(loaded.graph, named.members);
            row.avg_degree = amen::average_degree(nb);
            row.flake_odf = amen::flake_odf(loaded.graph, nb);
            try {
                row.cut_ratio = amen::cut_ratio(loaded.graph, nb);
            } catch (const amen::MeasureDomainError& e) {
                row.error = e.what();
            }
            try {
                row.conductance = amen::conductance(loaded.graph, nb);
            } catch (const amen::MeasureDomainError& e) {
                row.error = e.what();
            }
            try {
                row.aw_ncut = amen::aw_ncut_uniform(loaded.graph, nb, *sim, total_volume);
            } catch (const amen::MeasureDomainError& e) {
                row.error = e.what();
            }
        } catch (const amen::Error& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }

    std::optional<double> partition_q;
    if (args.partition_modularity) {
        // neighborhoods as a partition: disjoint circles, leftovers pooled
        // into one extra community
        std::vector<std::uint32_t> community(loaded.graph.node_count(),
                                             static_cast<std::uint32_t>(rows.size()));
        std::vector<char> seen(loaded.graph.node_count(), 0);
        for (std::size_t c = 0; c < loaded.neighborhoods.size(); ++c) {
            for (amen::NodeId v : loaded.neighborhoods[c].members) {
                if (seen[v])
                    throw amen::InputError("--partition-modularity needs disjoint neighborhoods");
                seen[v] = 1;
                community[v] = static_cast<std::uint32_t>(c);
            }
        }
        partition_q = amen::modularity(loaded.graph, amen::Partition{community});
    }

    auto fmt = [&](const std::optional<double>& v) {
        return v ? amen::format_number(*v, args.precision) : std::string();
    };

    if (args.format == "json") {
        nlohmann::ordered_json doc;
        doc["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json row{{"neighborhood_id", r.id}};
            if (r.avg_degree) row["avg_degree"] = *r.avg_degree;
            if (r.cut_ratio) row["cut_ratio"] = *r.cut_ratio;
            if (r.conductance) row["conductance"] = *r.conductance;
            if (r.flake_odf) row["flake_odf"] = *r.flake_odf;
            if (r.aw_ncut) row["aw_ncut"] = *r.aw_ncut;
            if (!r.error.empty()) row["error"] = r.error;
            doc["rows"].push_back(std::move(row));
        }
        if (partition_q) doc["partition_modularity"] = *partition_q;
        emit(args.output, doc.dump(2) + "\n", manifest);
    } else {
        std::ostringstream csv;
        csv << "neighborhood_id,avg_degree,cut_ratio,conductance,flake_odf,aw_ncut,error\n";
        for (const auto& r : rows)
            csv << amen::csv_field(r.id) << ',' << fmt(r.avg_degree) << ',' << fmt(r.cut_ratio)
                << ',' << fmt(r.conductance) << ',' << fmt(r.flake_odf) << ',' << fmt(r.aw_ncut)
                << ',' << amen::csv_field(r.error) << '\n';
        if (partition_q) csv << "_partition_,,,,,,modularity=" << fmt(partition_q) << '\n';
        emit(args.output, csv.str(), manifest);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"normality scoring and anomaly ranking for attributed graphs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    RankArgs rank_args;
    auto* rank = app.add_subcommand("rank", "rank neighborhoods by normality");
    add_common_input(rank, rank_args.input);
    rank->add_option("--norm", rank_args.norm)->check(CLI::IsMember({"l1", "l2", "topk"}));
    rank->add_option("--k", rank_args.k, "focus size for --norm topk");
    rank->add_option("--similarity", rank_args.similarity)
        ->check(CLI::IsMember({"dot", "delta", "binary-mixed"}));
    rank->add_option("--jobs", rank_args.jobs);
    rank->add_option("--output", rank_args.output);
    rank->add_option("--format", rank_args.format)->check(CLI::IsMember({"csv", "json"}));
    rank->add_option("--precision", rank_args.precision);

    FocusArgs focus_args;
    auto* focus = app.add_subcommand("focus", "per-neighborhood relevance breakdown");
    add_common_input(focus, focus_args.input);
    focus->add_option("--similarity", focus_args.similarity)
        ->check(CLI::IsMember({"dot", "delta", "binary-mixed"}));
    focus->add_option("--top", focus_args.top, "keep only the top N attributes");
    focus->add_option("--output", focus_args.output);
    focus->add_option("--format", focus_args.format)->check(CLI::IsMember({"csv", "json"}));
    focus->add_option("--precision", focus_args.precision);

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "seeded perturbation experiment");
    add_common_input(eval, eval_args.input);
    eval->get_option("--graph")->required(false);
    eval->get_option("--attrs")->required(false);
    eval->add_flag("--synthetic", eval_args.synthetic, "use the planted-community generator");
    eval->add_option("--communities", eval_args.gen.communities);
    eval->add_option("--intra-p", eval_args.gen.intra_edge_probability);
    eval->add_option("--intra-jitter", eval_args.gen.intra_jitter);
    eval->add_option("--inter-p", eval_args.gen.inter_edge_probability);
    eval->add_option("--focus-min", eval_args.gen.focus_attrs_min);
    eval->add_option("--focus-max", eval_args.gen.focus_attrs_max);
    eval->add_option("--noise", eval_args.gen.focus_noise);
    eval->add_option("--leak", eval_args.gen.focus_leak);
    eval->add_option("--background-attrs", eval_args.gen.background_attrs);
    eval->add_option("--background-p", eval_args.gen.background_probability);
    eval->add_option("--mode", eval_args.mode)
        ->check(CLI::IsMember({"structure", "attribute", "both"}));
    eval->add_option("--grid", eval_args.grid)->capture_default_str();
    eval->add_option("--seed", eval_args.seed, "falls back to AMEN_SEED, then 1");
    eval->add_option("--anomaly-frac", eval_args.anomaly_frac)->capture_default_str();
    eval->add_option("--size-min", eval_args.size_min)->capture_default_str();
    eval->add_option("--size-max", eval_args.size_max)->capture_default_str();
    eval->add_option("--methods", eval_args.methods)->capture_default_str();
    eval->add_option("--similarity", eval_args.similarity)
        ->check(CLI::IsMember({"dot", "delta", "binary-mixed"}));
    eval->add_option("--jobs", eval_args.jobs);
    eval->add_option("--output", eval_args.output, "report base path")->required();
    eval->add_option("--precision", eval_args.precision);

    AnalyzeArgs analyze_args;
    auto* analyze = app.add_subcommand("analyze", "structure/attribute correlation tables");
    add_common_input(analyze, analyze_args.input);
    analyze->add_option("--similarity", analyze_args.similarity)
        ->check(CLI::IsMember({"dot", "delta", "binary-mixed"}));
    analyze->add_option("--output", analyze_args.output, "table base path")->required();
    analyze->add_option("--precision", analyze_args.precision);

    BaselinesArgs baselines_args;
    auto* baselines = app.add_subcommand("baselines", "classical quality scores per neighborhood");
    add_common_input(baselines, baselines_args.input);
    baselines->add_option("--similarity", baselines_args.similarity)
        ->check(CLI::IsMember({"dot", "delta", "binary-mixed"}));
    baselines->add_flag("--partition-modularity", baselines_args.partition_modularity,
                        "treat disjoint neighborhoods as a partition and report its modularity");
    baselines->add_option("--output", baselines_args.output);
    baselines->add_option("--format", baselines_args.format)->check(CLI::IsMember({"csv", "json"}));
    baselines->add_option("--precision", baselines_args.precision);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return 2;
    }

    ManifestWriter manifest;
    for (int i = 1; i < argc; ++i) manifest.argv.emplace_back(argv[i]);

    try {
        int rc = 0;
        std::string base;
        if (rank->parsed()) {
            manifest.command = "rank";
            rc = run_rank(rank_args, manifest);
            base = rank_args.output;
        } else if (focus->parsed()) {
            manifest.command = "focus";
            rc = run_focus(focus_args, manifest);
            base = focus_args.output;
        } else if (eval->parsed()) {
            manifest.command = "eval";
            rc = run_eval(eval_args, manifest);
            base = eval_args.output;
        } else if (analyze->parsed()) {
            manifest.command = "analyze";
            rc = run_analyze(analyze_args, manifest);
            base = analyze_args.output;
        } else if (baselines->parsed()) {
            manifest.command = "baselines";
            rc = run_baselines(baselines_args, manifest);
            base = baselines_args.output;
        }
        if (!base.empty()) manifest.write(base);
        return rc;
    } catch (const amen::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const amen::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
