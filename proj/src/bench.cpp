#include "shotasm/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "shotasm/error.hpp"
#include "shotasm/syntax.hpp"

namespace shotasm {
namespace {

struct GridCell {
    std::size_t n, k;
};

std::vector<GridCell> extended_grid() {
    std::vector<GridCell> cells;
    for (std::size_t n = 5; n <= 10; ++n)
        for (std::size_t k = 3; k <= 7; ++k)
            if (k <= n) cells.push_back({n, k});
    return cells;
}

Shot random_shot(std::size_t index, bool drop_labels, double drop_probability, Rng& rng) {
    Shot s;
    s.id = "s" + std::to_string(index);
    const auto size = shot_size_at(static_cast<std::size_t>(rng.below(kShotSizeCount)));
    const auto motion = motion_at(static_cast<std::size_t>(rng.below(kMotionCount)));
    // Both drop draws are consumed even for the label-complete scenario.
    const bool drop_size = rng.uniform01() < drop_probability;
    const bool drop_motion = rng.uniform01() < drop_probability;
    if (!(drop_labels && drop_size)) s.shot_size = size;
    if (!(drop_labels && drop_motion)) s.motion = motion;
    return s;
}

std::size_t scenario_id(Scenario s) { return static_cast<std::size_t>(s); }

}  // namespace

std::string_view to_string(Scenario s) {
    switch (s) {
    case Scenario::Fixed5c3: return "fixed5c3";
    case Scenario::Random5c3: return "random5c3";
    case Scenario::ExtendedRandom: return "extended";
    }
    return "unknown";
}

std::optional<Scenario> parse_scenario(std::string_view name) {
    for (auto s : all_scenarios()) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

std::vector<Scenario> all_scenarios() { return {Scenario::Fixed5c3, Scenario::Random5c3, Scenario::ExtendedRandom}; }

std::size_t default_sample_count(Scenario s) {
    switch (s) {
    case Scenario::Fixed5c3: return 60;
    case Scenario::Random5c3: return 200;
    case Scenario::ExtendedRandom: return 240;
    }
    return 0;
}

EnergySpec syntax_spec() {
    return EnergySpec::create(0.5, 0.5, 0.0, builtin_shot_size_matrix(), builtin_motion_matrix());
}

Instance generate_instance(Scenario scenario, Rng& rng, double drop_probability) {
    std::size_t n = 5;
    std::size_t k = 3;
    if (scenario == Scenario::ExtendedRandom) {
        static const auto grid = extended_grid();
        const auto cell = grid[static_cast<std::size_t>(rng.below(grid.size()))];
        n = cell.n;
        k = cell.k;
    }
    const bool drop = scenario != Scenario::Fixed5c3;
    std::vector<Shot> shots;
    for (std::size_t i = 0; i < n; ++i) shots.push_back(random_shot(i, drop, drop_probability, rng));
    return Instance{ShotCatalog::create(std::move(shots)), k, syntax_spec()};
}

PlantedInstance generate_planted_instance(std::size_t n, std::size_t k, Rng& rng) {
    if (k == 0 || k > n) throw Error(ErrorCode::KExceedsN, "planted instance needs 0 < k <= n");
    // Catalog slot of each shot; the first k shots (by creation) are planted.
    std::vector<std::size_t> slot(n);
    for (std::size_t i = 0; i < n; ++i) slot[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(slot[i - 1], slot[static_cast<std::size_t>(rng.below(i))]);

    std::vector<Shot> shots(n);
    Sequence planted;
    for (std::size_t i = 0; i < n; ++i) {
        Shot s;
        s.id = "shot" + std::to_string(slot[i]);
        if (i < k) {
            s.shot_size = ShotSize::MS;
            s.motion = MotionType::STABLE;
            planted.shots.push_back(slot[i]);
        } else {
            s.shot_size = ShotSize::ECU;
            s.motion = motion_at(1 + static_cast<std::size_t>(rng.below(kMotionCount - 1)));
        }
        shots[slot[i]] = std::move(s);
    }
    PlantedInstance out{Instance{ShotCatalog::create(std::move(shots)), k, syntax_spec()}, planted, 0.0};
    out.planted_energy = joint_energy(out.planted, out.instance.catalog, out.instance.spec).total;
    return out;
}

std::size_t AblationConfig::samples_for(Scenario s) const {
    switch (s) {
    case Scenario::Fixed5c3: return fixed_samples.value_or(default_sample_count(s));
    case Scenario::Random5c3: return random_samples.value_or(default_sample_count(s));
    case Scenario::ExtendedRandom: return extended_samples.value_or(default_sample_count(s));
    }
    return 0;
}

const AccuracyRow& AccuracyTable::row(Algorithm a, Scenario s) const {
    for (const auto& r : rows) {
        if (r.algorithm == a && r.scenario == s) return r;
    }
    throw Error(ErrorCode::InvalidConfig, "no accuracy row for " + std::string(to_string(a)) + "/" +
                                              std::string(to_string(s)));
}

std::uint64_t instance_seed(std::uint64_t master, Scenario scenario, std::size_t index) {
    return Rng::derive(master, (scenario_id(scenario) << 32) | index);
}

AccuracyTable run_ablation(const std::vector<Algorithm>& algorithms, const std::vector<Scenario>& scenarios,
                           const AblationConfig& cfg) {
    struct Job {
        Scenario scenario;
        std::size_t index;
    };
    std::vector<Job> jobs;
    for (auto s : scenarios)
        for (std::size_t i = 0; i < cfg.samples_for(s); ++i) jobs.push_back({s, i});

    std::vector<InstanceRecord> records(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) {
            try {
                const auto seed = instance_seed(cfg.seed, jobs[j].scenario, jobs[j].index);
                Rng rng(seed);
                const auto inst = generate_instance(jobs[j].scenario, rng, cfg.drop_probability);
                const auto oracle = brute_force(inst.catalog, inst.k, inst.spec);
                InstanceRecord rec{jobs[j].scenario, jobs[j].index, inst.catalog.size(), inst.k, oracle.best_energy,
                                   {}, {}};
                for (std::size_t a = 0; a < algorithms.size(); ++a) {
                    AlgorithmConfig run_cfg = cfg.algorithms;
                    run_cfg.discrete.seed = Rng::derive(seed, a + 1);
                    run_cfg.continuous.seed = run_cfg.discrete.seed;
                    const auto res = run_algorithm(algorithms[a], inst.catalog, inst.k, inst.spec, run_cfg);
                    const double e = res.found() ? res.best_energy : std::numeric_limits<double>::infinity();
                    rec.energies.push_back(e);
                    rec.success.push_back(res.found() && std::abs(e - oracle.best_energy) <= kTieTolerance);
                }
                records[j] = std::move(rec);
            } catch (...) {
                errors[j] = std::current_exception();
            }
        }
    };
    std::size_t threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(1, jobs.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    AccuracyTable table{algorithms, scenarios, {}, std::move(records)};
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
        for (auto s : scenarios) {
            AccuracyRow row{algorithms[a], s, 0, 0, 0.0};
            for (const auto& rec : table.records) {
                if (rec.scenario != s) continue;
                ++row.samples;
                if (rec.success[a]) ++row.successes;
            }
            row.accuracy = row.samples ? static_cast<double>(row.successes) / static_cast<double>(row.samples) : 0.0;
            table.rows.push_back(row);
        }
    }
    return table;
}

std::string accuracy_csv(const AccuracyTable& table) {
    std::ostringstream out;
    out << "algorithm,scenario,samples,accuracy\n";
    out.precision(6);
    out << std::fixed;
    for (const auto& r : table.rows) {
        out << to_string(r.algorithm) << ',' << to_string(r.scenario) << ',' << r.samples << ',' << r.accuracy
            << '\n';
    }
    return out.str();
}

std::string accuracy_json(const AccuracyTable& table, const AblationConfig& cfg) {
    using nlohmann::ordered_json;
    ordered_json doc;
    const auto& d = cfg.algorithms.discrete;
    const auto& c = cfg.algorithms.continuous;
    doc["config"] = {
        {"seed", cfg.seed},
        {"drop_probability", cfg.drop_probability},
        {"samples",
         {{"fixed5c3", cfg.samples_for(Scenario::Fixed5c3)},
          {"random5c3", cfg.samples_for(Scenario::Random5c3)},
          {"extended", cfg.samples_for(Scenario::ExtendedRandom)}}},
        {"discrete",
         {{"iters", d.max_iters},
          {"topq", d.top_q ? ordered_json(*d.top_q) : ordered_json(nullptr)},
          {"beam", d.beam_size},
          {"pop", d.population},
          {"rc", d.crossover_prob},
          {"rm", d.mutation_prob},
          {"epsilon", d.epsilon},
          {"temp", d.temperature}}},
        {"continuous",
         {{"eta", c.eta}, {"epsilon", c.epsilon}, {"iters", c.iters}, {"sinkhorn_iters", c.sinkhorn_iters}}},
        {"tie_tolerance", kTieTolerance},
    };
    auto rows = ordered_json::array();
    for (const auto& r : table.rows) {
        rows.push_back({{"algorithm", to_string(r.algorithm)},
                        {"scenario", to_string(r.scenario)},
                        {"samples", r.samples},
                        {"successes", r.successes},
                        {"accuracy", r.accuracy}});
    }
    doc["accuracy"] = std::move(rows);
    auto instances = ordered_json::array();
    for (const auto& rec : table.records) {
        ordered_json item;
        item["scenario"] = to_string(rec.scenario);
        item["index"] = rec.index;
        item["n"] = rec.n;
        item["k"] = rec.k;
        item["oracle_energy"] = rec.oracle_energy;
        ordered_json per = ordered_json::object();
        for (std::size_t a = 0; a < table.algorithms.size(); ++a) {
            const double e = rec.energies[a];
            per[std::string(to_string(table.algorithms[a]))] = {
                {"energy", std::isfinite(e) ? ordered_json(e) : ordered_json(nullptr)},
                {"success", static_cast<bool>(rec.success[a])}};
        }
        item["results"] = std::move(per);
        instances.push_back(std::move(item));
    }
    doc["instances"] = std::move(instances);
    return doc.dump(2) + "\n";
}

StyleScores evaluate_style(const LabelSequence& output, const LabelSequence& reference) {
    auto mse_for = [&](Alphabet a) -> std::optional<double> {
        try {
            return matrix_mse(sequence_style_matrix(output, a), sequence_style_matrix(reference, a));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NoTransitions) return std::nullopt;
            throw;
        }
    };
    StyleScores s{mse_for(Alphabet::ShotSize), mse_for(Alphabet::Motion)};
    if (!s.size_mse && !s.motion_mse) {
        throw Error(ErrorCode::NoTransitions, "neither shot-size nor motion transitions can be compared");
    }
    return s;
}

StyleTrial run_style_trial(Rng& rng, const OptimizerConfig& cfg, std::size_t n, std::size_t k,
                           std::size_t reference_length, std::size_t random_assemblies) {
    // Reference: Markov chain that follows one random cycle through each
    // alphabet, jumping uniformly with probability 1 - kStickiness.
    constexpr double kStickiness = 0.8;
    const auto successors = [&](std::size_t count) {
        std::vector<std::size_t> order(count);
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (std::size_t i = count - 1; i > 0; --i)
            std::swap(order[i], order[static_cast<std::size_t>(rng.below(i + 1))]);
        std::vector<std::size_t> next(count);
        for (std::size_t i = 0; i < count; ++i) next[order[i]] = order[(i + 1) % count];
        return next;
    };
    const auto next_size = successors(kShotSizeCount);
    const auto next_motion = successors(kMotionCount);
    std::size_t size = static_cast<std::size_t>(rng.below(kShotSizeCount));
    std::size_t motion = static_cast<std::size_t>(rng.below(kMotionCount));
    LabelSequence reference;
    for (std::size_t t = 0; t < reference_length; ++t) {
        reference.push_back({shot_size_at(size), motion_at(motion)});
        size = rng.uniform01() < kStickiness ? next_size[size] : static_cast<std::size_t>(rng.below(kShotSizeCount));
        motion = rng.uniform01() < kStickiness ? next_motion[motion] : static_cast<std::size_t>(rng.below(kMotionCount));
    }

    std::vector<Shot> shots;
    for (std::size_t i = 0; i < n; ++i) {
        Shot s;
        s.id = "c" + std::to_string(i);
        s.shot_size = shot_size_at(static_cast<std::size_t>(rng.below(kShotSizeCount)));
        s.motion = motion_at(static_cast<std::size_t>(rng.below(kMotionCount)));
        shots.push_back(std::move(s));
    }
    const auto catalog = ShotCatalog::create(std::move(shots));
    const auto spec = EnergySpec::create(0.5, 0.5, 0.0, learn_transition_matrix(reference, Alphabet::ShotSize),
                                         learn_transition_matrix(reference, Alphabet::Motion));

    OptimizerConfig run_cfg = cfg;
    run_cfg.seed = rng.next();
    const auto result = langevin_ga(catalog, k, spec, run_cfg);

    StyleTrial trial;
    trial.optimized = evaluate_style(labels_of(catalog, result.best_sequences.front().shots), reference);

    double size_sum = 0.0;
    double motion_sum = 0.0;
    for (std::size_t r = 0; r < random_assemblies; ++r) {
        const auto seq = random_sequence(n, k, rng);
        const auto s = evaluate_style(labels_of(catalog, seq.shots), reference);
        size_sum += s.size_mse.value_or(0.0);
        motion_sum += s.motion_mse.value_or(0.0);
    }
    trial.random_mean.size_mse = size_sum / static_cast<double>(random_assemblies);
    trial.random_mean.motion_mse = motion_sum / static_cast<double>(random_assemblies);
    return trial;
}

}  // namespace shotasm
