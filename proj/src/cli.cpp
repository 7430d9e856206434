#include "shotasm/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "shotasm/algorithms.hpp"
#include "shotasm/bench.hpp"
#include "shotasm/error.hpp"
#include "shotasm/result_json.hpp"
#include "shotasm/syntax.hpp"

namespace shotasm::cli {
namespace {

using nlohmann::ordered_json;

struct FlagError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& data, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << data;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
    f << data;
    if (!f) throw Error(ErrorCode::IoError, "write failed for " + path);
}

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::KExceedsN:
    case ErrorCode::MissingEmbeddings:
    case ErrorCode::InstanceTooLarge: return kInfeasible;
    case ErrorCode::InvalidSpec:
    case ErrorCode::InvalidConfig: return kInvalidFlags;
    default: return kDataError;
    }
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

struct SearchFlags {
    std::uint64_t seed = 0;
    std::size_t iters = OptimizerConfig{}.max_iters;
    std::size_t beam = OptimizerConfig{}.beam_size;
    std::size_t pop = OptimizerConfig{}.population;
    double rc = OptimizerConfig{}.crossover_prob;
    double rm = OptimizerConfig{}.mutation_prob;
    double epsilon = OptimizerConfig{}.epsilon;
    double temp = OptimizerConfig{}.temperature;
    std::size_t topq = 0;
    double eta = ContinuousConfig{}.eta;
    double noise = ContinuousConfig{}.epsilon;
    std::size_t cont_iters = ContinuousConfig{}.iters;
    std::size_t sinkhorn_iters = ContinuousConfig{}.sinkhorn_iters;

    void add_to(CLI::App* app) {
        app->add_option("--seed", seed, "Random seed")->capture_default_str();
        app->add_option("--iters", iters, "Maximum iterations of the discrete searches")->capture_default_str();
        app->add_option("--beam", beam, "Beam size")->capture_default_str();
        app->add_option("--pop", pop, "GA population size")->capture_default_str();
        app->add_option("--rc", rc, "Crossover probability")->capture_default_str();
        app->add_option("--rm", rm, "Mutation probability")->capture_default_str();
        app->add_option("--epsilon", epsilon, "Langevin-like step size")->capture_default_str();
        app->add_option("--temp", temp, "Langevin-like temperature")->capture_default_str();
        app->add_option("--topq", topq, "Stop once this many sequences tie the best (0: never)")
            ->capture_default_str();
        app->add_option("--eta", eta, "Continuous Langevin learning rate")->capture_default_str();
        app->add_option("--noise", noise, "Continuous Langevin noise intensity")->capture_default_str();
        app->add_option("--cont-iters", cont_iters, "Continuous Langevin steps")->capture_default_str();
        app->add_option("--sinkhorn-iters", sinkhorn_iters, "Sinkhorn rounds per projection")->capture_default_str();
    }

    AlgorithmConfig config() const {
        AlgorithmConfig c;
        c.discrete.max_iters = iters;
        c.discrete.beam_size = beam;
        c.discrete.population = pop;
        c.discrete.crossover_prob = rc;
        c.discrete.mutation_prob = rm;
        c.discrete.epsilon = epsilon;
        c.discrete.temperature = temp;
        if (topq > 0) c.discrete.top_q = topq;
        c.discrete.seed = seed;
        c.continuous.eta = eta;
        c.continuous.epsilon = noise;
        c.continuous.iters = cont_iters;
        c.continuous.sinkhorn_iters = sinkhorn_iters;
        c.continuous.seed = seed;
        c.discrete.validate();
        c.continuous.validate();
        return c;
    }

    ordered_json echo() const {
        return {{"seed", seed},       {"iters", iters},
                {"beam", beam},       {"pop", pop},
                {"rc", rc},           {"rm", rm},
                {"epsilon", epsilon}, {"temp", temp},
                {"topq", topq ? ordered_json(topq) : ordered_json(nullptr)},
                {"eta", eta},         {"noise", noise},
                {"cont_iters", cont_iters}, {"sinkhorn_iters", sinkhorn_iters}};
    }
};

struct OptimizeFlags {
    std::string catalog;
    std::size_t k = 0;
    std::string algo = "langevin-ga";
    double alpha = 0.5;
    double beta = 0.5;
    double gamma = 0.0;
    std::string size_matrix;
    std::string motion_matrix;
    std::string reference;
    std::string out;
    bool trace = false;
    SearchFlags search;
};

int cmd_optimize(const OptimizeFlags& f, std::ostream& out, std::ostream& err) {
    const auto algo = parse_algorithm(f.algo);
    if (!algo) throw FlagError("unknown --algo '" + f.algo + "'");
    if (!f.reference.empty() && (!f.size_matrix.empty() || !f.motion_matrix.empty())) {
        throw FlagError("--reference cannot be combined with --size-matrix or --motion-matrix");
    }
    const auto cfg = f.search.config();
    const auto catalog = parse_catalog(read_file(f.catalog));

    std::optional<TransitionMatrix> size_m;
    std::optional<TransitionMatrix> motion_m;
    std::string size_source = "builtin";
    std::string motion_source = "builtin";
    if (!f.reference.empty()) {
        const auto ref = parse_reference(read_file(f.reference));
        if (f.alpha > 0.0) size_m = learn_transition_matrix(ref, Alphabet::ShotSize);
        if (f.beta > 0.0) motion_m = learn_transition_matrix(ref, Alphabet::Motion);
        size_source = motion_source = "reference";
    } else {
        size_m = f.size_matrix.empty() ? builtin_shot_size_matrix() : parse_matrix_json(read_file(f.size_matrix));
        motion_m = f.motion_matrix.empty() ? builtin_motion_matrix() : parse_matrix_json(read_file(f.motion_matrix));
        if (!f.size_matrix.empty()) size_source = f.size_matrix;
        if (!f.motion_matrix.empty()) motion_source = f.motion_matrix;
    }
    if (size_m && size_m->known_alphabet() != Alphabet::ShotSize)
        throw Error(ErrorCode::AlphabetMismatch, "--size-matrix is not over the shot-size alphabet");
    if (motion_m && motion_m->known_alphabet() != Alphabet::Motion)
        throw Error(ErrorCode::AlphabetMismatch, "--motion-matrix is not over the motion alphabet");

    const auto spec = EnergySpec::create(f.alpha, f.beta, f.gamma, size_m, motion_m,
                                         f.gamma > 0.0 ? catalog.script_embedding() : std::nullopt);
    validate_instance(catalog, f.k, spec);

    err << "optimize: algo=" << f.algo << " N=" << catalog.size() << " K=" << f.k << '\n';
    const auto result = run_algorithm(*algo, catalog, f.k, spec, cfg);
    if (!result.found()) err << "warning: no valid selection was found\n";

    ordered_json config = {{"catalog", f.catalog},
                           {"k", f.k},
                           {"algo", f.algo},
                           {"alpha", f.alpha},
                           {"beta", f.beta},
                           {"gamma", f.gamma},
                           {"size_matrix", size_source},
                           {"motion_matrix", motion_source},
                           {"reference", f.reference.empty() ? ordered_json(nullptr) : ordered_json(f.reference)},
                           {"tie_tolerance", kTieTolerance}};
    const auto echo = f.search.echo();
    for (const auto& [key, value] : echo.items()) config[key] = value;
    const auto doc = result_to_json(result, catalog, std::move(config), f.trace);
    write_output(f.out, doc.dump(2) + "\n", out);
    return kOk;
}

struct LearnFlags {
    std::string reference;
    std::string alphabet;
    std::string out;
    std::string csv;
};

int cmd_learn(const LearnFlags& f, std::ostream& out, std::ostream& err) {
    const auto alphabet = parse_alphabet(f.alphabet);
    if (!alphabet) throw FlagError("--alphabet must be 'size' or 'motion'");
    const auto ref = parse_reference(read_file(f.reference));
    const auto m = learn_transition_matrix(ref, *alphabet);
    write_output(f.out, serialize_matrix_json(m), out);
    if (!f.csv.empty()) write_output(f.csv, matrix_to_csv(m), out);
    std::ostringstream sum;
    sum << "global sum: " << matrix_sum(m) << '\n';
    (f.out.empty() || f.out == "-" ? err : out) << sum.str();
    return kOk;
}

struct BenchFlags {
    std::string scenarios = "fixed5c3,random5c3,extended";
    std::string algos = "continuous,bs,ga,langevin-bs,langevin-ga";
    std::string out;
    double drop = kDefaultDropProbability;
    std::size_t fixed_samples = 0;
    std::size_t random_samples = 0;
    std::size_t extended_samples = 0;
    std::size_t threads = 0;
    SearchFlags search;
};

int cmd_bench(const BenchFlags& f, std::ostream& out, std::ostream& err) {
    std::vector<Scenario> scenarios;
    for (const auto& s : split_list(f.scenarios)) {
        const auto parsed = parse_scenario(s);
        if (!parsed) throw FlagError("unknown scenario '" + s + "'");
        scenarios.push_back(*parsed);
    }
    std::vector<Algorithm> algos;
    for (const auto& a : split_list(f.algos)) {
        const auto parsed = parse_algorithm(a);
        if (!parsed) throw FlagError("unknown algorithm '" + a + "'");
        algos.push_back(*parsed);
    }
    if (scenarios.empty() || algos.empty()) throw FlagError("--scenarios and --algos must be non-empty");
    if (!(f.drop >= 0.0 && f.drop <= 1.0)) throw FlagError("--p-drop must lie in [0, 1]");

    AblationConfig cfg;
    cfg.algorithms = f.search.config();
    cfg.seed = f.search.seed;
    cfg.drop_probability = f.drop;
    cfg.threads = f.threads;
    if (f.fixed_samples) cfg.fixed_samples = f.fixed_samples;
    if (f.random_samples) cfg.random_samples = f.random_samples;
    if (f.extended_samples) cfg.extended_samples = f.extended_samples;

    err << "bench: " << algos.size() << " algorithms x " << scenarios.size() << " scenarios\n";
    const auto table = run_ablation(algos, scenarios, cfg);
    const auto csv = accuracy_csv(table);
    if (f.out.empty() || f.out == "-") {
        out << csv;
    } else {
        write_output(f.out + ".csv", csv, out);
        write_output(f.out + ".json", accuracy_json(table, cfg), out);
    }
    return kOk;
}

struct EvalFlags {
    std::string output_labels;
    std::string reference;
    std::string out;
};

int cmd_eval(const EvalFlags& f, std::ostream& out, std::ostream& err) {
    const auto output = parse_reference(read_file(f.output_labels));
    const auto reference = parse_reference(read_file(f.reference));
    const auto scores = evaluate_style(output, reference);
    if (!scores.size_mse) err << "warning: shot-size transitions missing; size_mse is null\n";
    if (!scores.motion_mse) err << "warning: motion transitions missing; motion_mse is null\n";
    ordered_json doc = {{"size_mse", scores.size_mse ? ordered_json(*scores.size_mse) : ordered_json(nullptr)},
                        {"motion_mse", scores.motion_mse ? ordered_json(*scores.motion_mse) : ordered_json(nullptr)}};
    write_output(f.out, doc.dump(2) + "\n", out);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Energy-based shot assembly optimizer", "shotasm"};
    app.require_subcommand(1);

    OptimizeFlags opt;
    auto* optimize = app.add_subcommand("optimize", "Select and order K shots from a catalog");
    optimize->add_option("--catalog", opt.catalog, "Catalog JSON")->required();
    optimize->add_option("--k", opt.k, "Number of shots to assemble")->required();
    optimize->add_option("--algo", opt.algo, "oracle|bs|ga|langevin-bs|langevin-ga|continuous")
        ->capture_default_str();
    optimize->add_option("--alpha", opt.alpha, "Shot-size weight")->capture_default_str();
    optimize->add_option("--beta", opt.beta, "Motion weight")->capture_default_str();
    optimize->add_option("--gamma", opt.gamma, "Semantic weight")->capture_default_str();
    optimize->add_option("--size-matrix", opt.size_matrix, "Shot-size score matrix JSON");
    optimize->add_option("--motion-matrix", opt.motion_matrix, "Motion score matrix JSON");
    optimize->add_option("--reference", opt.reference, "Reference labels; learned matrices replace the built-ins");
    optimize->add_option("--out", opt.out, "Result JSON path (default: stdout)");
    optimize->add_flag("--trace", opt.trace, "Include the per-iteration best energy");
    opt.search.add_to(optimize);

    LearnFlags learn;
    auto* learn_cmd = app.add_subcommand("learn", "Learn a transition matrix from reference labels");
    learn_cmd->add_option("--reference", learn.reference, "Reference labels")->required();
    learn_cmd->add_option("--alphabet", learn.alphabet, "size|motion")->required();
    learn_cmd->add_option("--out", learn.out, "Matrix JSON path (default: stdout)");
    learn_cmd->add_option("--csv", learn.csv, "Also write heatmap CSV here");

    BenchFlags bench;
    auto* bench_cmd = app.add_subcommand("bench", "Accuracy of the search methods against brute force");
    bench_cmd->add_option("--scenarios", bench.scenarios, "Comma list of fixed5c3,random5c3,extended")
        ->capture_default_str();
    bench_cmd->add_option("--algos", bench.algos, "Comma list of algorithms")->capture_default_str();
    bench_cmd->add_option("--out", bench.out, "Output prefix; writes <prefix>.csv and <prefix>.json");
    bench_cmd->add_option("--p-drop", bench.drop, "Label drop probability")->capture_default_str();
    bench_cmd->add_option("--samples-fixed", bench.fixed_samples, "Samples for fixed5c3 (0: default 60)");
    bench_cmd->add_option("--samples-random", bench.random_samples, "Samples for random5c3 (0: default 200)");
    bench_cmd->add_option("--samples-extended", bench.extended_samples, "Samples for extended (0: default 240)");
    bench_cmd->add_option("--threads", bench.threads, "Worker threads (0: all cores)");
    bench.search.add_to(bench_cmd);

    EvalFlags eval;
    auto* eval_cmd = app.add_subcommand("eval", "Style MSE between an output and a reference");
    eval_cmd->add_option("--output-labels", eval.output_labels, "Labels of the assembled output")->required();
    eval_cmd->add_option("--reference", eval.reference, "Reference labels")->required();
    eval_cmd->add_option("--out", eval.out, "Result JSON path (default: stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidFlags;
    }

    try {
        if (optimize->parsed()) return cmd_optimize(opt, out, err);
        if (learn_cmd->parsed()) return cmd_learn(learn, out, err);
        if (bench_cmd->parsed()) return cmd_bench(bench, out, err);
        if (eval_cmd->parsed()) return cmd_eval(eval, out, err);
    } catch (const FlagError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidFlags;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const nlohmann::json::exception& e) {
        err << "error: MalformedJson: " << e.what() << '\n';
        return kDataError;
    }
    return kInvalidFlags;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace shotasm::cli
