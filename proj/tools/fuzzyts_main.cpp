#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fuzzyts/evaluator.hpp"
#include "fuzzyts/fuzzifier.hpp"
#include "fuzzyts/model_io.hpp"
#include "fuzzyts/rules.hpp"
#include "fuzzyts/series.hpp"
#include "fuzzyts/trainer.hpp"

namespace fs = std::filesystem;
using namespace fuzzyts;

namespace {

struct RunConfig {
    std::string input_path;
    std::string output_dir = ".";
    std::string model_path;
    std::uint64_t seed = 42;
    bool seed_given = false;
    int particles = 5;
    double inertia = 1.4;
    double c1 = 2.0;
    double c2 = 2.0;
    double vmax = 0.01;
    int max_iterations = 500;
    double target_se = 3.0;
    int restarts = 10;
    bool emit_intermediate = false;
};

TrainingConfig makeTrainingConfig(const RunConfig& cfg) {
    TrainingConfig tc;
    tc.pso.inertia = cfg.inertia;
    tc.pso.c1 = cfg.c1;
    tc.pso.c2 = cfg.c2;
    tc.pso.v_max = cfg.vmax;
    tc.pso.v_min = -cfg.vmax;
    tc.pso.n_particles = cfg.particles;
    tc.pso.max_iterations = cfg.max_iterations;
    tc.pso.target_fitness = cfg.target_se;
    tc.pso.seed = cfg.seed;
    tc.runs = cfg.restarts;
    if (tc.runs < 1) throw ConfigError("restarts must be at least 1");
    tc.pso.validate();
    return tc;
}

void applySeedFallback(RunConfig& cfg) {
    if (cfg.seed_given) return;
    if (const char* env = std::getenv("FTS_SEED")) {
        try {
            cfg.seed = std::stoull(env);
        } catch (const std::exception&) {
            throw ConfigError(std::string("FTS_SEED is not a valid seed: ") + env);
        }
    }
}

void writeFile(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
}

std::string setName(int index) { return "A_" + std::to_string(index); }

std::string renderPartitions(const Partitioning& p, const FuzzificationStats& stats) {
    std::ostringstream os;
    os << "universe [" << p.universe.lower << ", " << p.universe.upper << "]  range "
       << p.universe.range() << "\n"
       << "avg_distance " << stats.avg_distance << "  std_dev " << stats.std_dev
       << "  revised_avg_distance " << stats.revised_avg_distance << "\n"
       << "sets " << p.nSets() << "  segment " << p.segment_length << "\n\n";
    os << std::left << std::setw(8) << "set" << std::right << std::setw(12) << "a" << std::setw(12)
       << "b" << std::setw(12) << "c" << std::setw(12) << "d" << '\n';
    for (const TrapezoidalSet& s : p.sets) {
        os << std::left << std::setw(8) << setName(s.index) << std::right << std::setw(12) << s.a
           << std::setw(12) << s.b << std::setw(12) << s.c << std::setw(12) << s.d << '\n';
    }
    return os.str();
}

std::string renderLabels(const TimeSeries& series, const std::vector<FuzzifiedObservation>& fuzzified) {
    std::ostringstream os;
    os << std::left << std::setw(8) << "t" << std::right << std::setw(12) << "value"
       << std::setw(10) << "set" << std::setw(14) << "membership" << '\n';
    for (const FuzzifiedObservation& fo : fuzzified) {
        std::string label = setName(fo.primary_set);
        if (fo.secondary_set) label += "/" + setName(*fo.secondary_set);
        std::ostringstream mu;
        mu << std::fixed << std::setprecision(4) << fo.membership_primary;
        os << std::left << std::setw(8) << fo.t << std::right << std::setw(12)
           << series.valueAt(fo.t) << std::setw(10) << label << std::setw(14) << mu.str() << '\n';
    }
    return os.str();
}

std::string renderGroups(const std::vector<FuzzySetGroup>& groups) {
    std::ostringstream os;
    os << std::left << std::setw(8) << "label" << std::setw(10) << "anchor" << "pattern\n";
    for (const FuzzySetGroup& g : groups) {
        std::ostringstream pat;
        pat << "{";
        for (std::size_t i = 0; i < g.pattern.size(); ++i) {
            if (i) pat << ", ";
            pat << setName(g.pattern[i]);
        }
        pat << "}";
        os << std::left << std::setw(8) << g.label << std::setw(10) << g.anchor_t << pat.str()
           << '\n';
    }
    return os.str();
}

std::string renderRules(const RuleBase& base) {
    std::ostringstream os;
    for (const ForecastRule& rule : base.rules) {
        os << "rule " << rule.label << ": if ";
        for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
            if (i) os << " and ";
            os << "F(t-" << rule.conditions[i].lag << ")=" << setName(rule.conditions[i].set);
        }
        if (rule.weights) {
            os << " then";
            for (std::size_t i = 0; i < rule.weights->size(); ++i) {
                os << (i ? ", " : " ") << "w" << i + 1 << "=" << (*rule.weights)[i];
            }
        } else {
            os << " then untrained";
        }
        os << "  [anchors";
        for (long long a : rule.anchor_ts) os << " " << a;
        os << "]\n";
    }
    return os.str();
}

struct Pipeline {
    TimeSeries series;
    FuzzificationStats stats;
    Partitioning partitioning;
    std::vector<FuzzifiedObservation> fuzzified;
    std::vector<FuzzySetGroup> groups;
    RuleBase rulebase;
};

Pipeline buildPipeline(const RunConfig& cfg) {
    TimeSeries series = loadCsv(cfg.input_path);
    const std::vector<double> values = series.values();
    FuzzificationStats stats = revisedAverageDistance(values);
    const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
    Partitioning partitioning = buildPartitioning(stats, *min_it, *max_it);
    std::vector<FuzzifiedObservation> fuzzified = fuzzify(series, partitioning);
    std::vector<FuzzySetGroup> groups = disambiguate(establishGroups(fuzzified), fuzzified);
    RuleBase rulebase = toRules(groups, partitioningFingerprint(partitioning));
    return Pipeline{std::move(series), stats,  std::move(partitioning),
                    std::move(fuzzified),     std::move(groups), std::move(rulebase)};
}

void emitIntermediate(const Pipeline& p, const fs::path& out_dir, const RuleBase& rulebase) {
    writeFile(out_dir / "groups.txt", renderGroups(p.groups));
    writeFile(out_dir / "rules.txt", renderRules(rulebase));
}

int cmdFuzzify(const RunConfig& cfg) {
    Pipeline p = buildPipeline(cfg);
    const fs::path out_dir(cfg.output_dir);
    fs::create_directories(out_dir);
    writeFile(out_dir / "partitions.txt", renderPartitions(p.partitioning, p.stats));
    writeFile(out_dir / "fuzzified_labels.txt", renderLabels(p.series, p.fuzzified));
    if (cfg.emit_intermediate) emitIntermediate(p, out_dir, p.rulebase);
    std::cout << "wrote " << (out_dir / "partitions.txt").string() << " ("
              << p.partitioning.nSets() << " sets) and "
              << (out_dir / "fuzzified_labels.txt").string() << " (" << p.fuzzified.size()
              << " labels)\n";
    return 0;
}

TrainedModel trainPipeline(const Pipeline& p, const RunConfig& cfg) {
    TrainedModel model =
        trainAll(p.partitioning, p.stats, p.rulebase, p.series, makeTrainingConfig(cfg));
    model.series_fingerprint = seriesFingerprint(p.series);
    return model;
}

void printTrainingSummary(const TrainedModel& model) {
    for (const ForecastRule& rule : model.rulebase.rules) {
        std::cout << "rule " << std::setw(3) << rule.label << "  order " << rule.order();
        auto it = model.rule_fits.find(rule.label);
        if (it == model.rule_fits.end()) {
            std::cout << "  untrained (no anchor with an actual value)\n";
            continue;
        }
        std::cout << "  SE " << std::setprecision(6) << it->second.fitness << "  iterations "
                  << it->second.iterations_used << "  restart " << it->second.best_restart
                  << (it->second.converged ? "" : "  NOT CONVERGED") << '\n';
    }
}

int cmdTrain(const RunConfig& cfg) {
    Pipeline p = buildPipeline(cfg);
    TrainedModel model = trainPipeline(p, cfg);
    const fs::path out_dir(cfg.output_dir);
    fs::create_directories(out_dir);
    saveModelFile(model, (out_dir / "model.json").string());
    printTrainingSummary(model);
    if (cfg.emit_intermediate) emitIntermediate(p, out_dir, model.rulebase);
    std::cout << "wrote " << (out_dir / "model.json").string() << '\n';
    return 0;
}

int evaluateModel(const Pipeline& p, const TrainedModel& model, const RunConfig& cfg) {
    if (model.series_fingerprint != seriesFingerprint(p.series)) {
        throw FingerprintMismatchError("model was trained on a different series");
    }
    const std::vector<Forecast> forecasts = forecastInSample(model, p.series);
    const EvaluationReport report = buildReport(p.series, forecasts);
    const fs::path out_dir(cfg.output_dir);
    fs::create_directories(out_dir);
    std::string text = renderText(report);
    text += "\ncomparison with published models of the same series\n";
    text += renderComparison(report);
    writeFile(out_dir / "report.txt", text);
    writeFile(out_dir / "report.csv", renderCsv(report));
    if (cfg.emit_intermediate) emitIntermediate(p, out_dir, model.rulebase);
    std::cout << "evaluated " << report.n_evaluated << " of " << report.rows.size() << " points";
    if (report.mse) std::cout << "  MSE " << *report.mse;
    if (report.mape) std::cout << "  MAPE " << *report.mape << " %";
    std::cout << "\nwrote " << (out_dir / "report.txt").string() << " and "
              << (out_dir / "report.csv").string() << '\n';
    return 0;
}

int cmdEvaluate(const RunConfig& cfg) {
    Pipeline p = buildPipeline(cfg);
    TrainedModel model = loadModelFile(cfg.model_path);
    return evaluateModel(p, model, cfg);
}

int cmdRun(const RunConfig& cfg) {
    Pipeline p = buildPipeline(cfg);
    const fs::path out_dir(cfg.output_dir);
    fs::create_directories(out_dir);
    writeFile(out_dir / "partitions.txt", renderPartitions(p.partitioning, p.stats));
    writeFile(out_dir / "fuzzified_labels.txt", renderLabels(p.series, p.fuzzified));
    TrainedModel model = trainPipeline(p, cfg);
    saveModelFile(model, (out_dir / "model.json").string());
    printTrainingSummary(model);
    return evaluateModel(p, model, cfg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fuzzy time series modeling with swarm-tuned rule weights"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string command;
    auto addCommon = [&](CLI::App* sub, bool needs_model) {
        sub->add_option("--input", cfg.input_path, "input CSV (t,value)")->required();
        sub->add_option("--out", cfg.output_dir, "output directory");
        sub->add_option("--seed", cfg.seed, "master seed (falls back to FTS_SEED, then 42)")
            ->each([&cfg](const std::string&) { cfg.seed_given = true; });
        sub->add_option("--particles", cfg.particles, "swarm size");
        sub->add_option("--inertia", cfg.inertia, "inertia coefficient");
        sub->add_option("--c1", cfg.c1, "self-confidence coefficient");
        sub->add_option("--c2", cfg.c2, "social-confidence coefficient");
        sub->add_option("--vmax", cfg.vmax, "velocity bound (symmetric)");
        sub->add_option("--max-iter", cfg.max_iterations, "iteration cap per restart");
        sub->add_option("--target-se", cfg.target_se, "stop a rule once its SE reaches this");
        sub->add_option("--restarts", cfg.restarts, "restarts per rule, best one wins");
        sub->add_flag("--emit-intermediate", cfg.emit_intermediate,
                      "also write group and rule listings");
        if (needs_model) {
            sub->add_option("--model", cfg.model_path, "trained model file")->required();
        }
        sub->callback([&command, sub]() { command = sub->get_name(); });
    };
    addCommon(app.add_subcommand("fuzzify", "write partition and label tables"), false);
    addCommon(app.add_subcommand("train", "train rule weights and write the model file"), false);
    addCommon(app.add_subcommand("evaluate", "forecast in-sample with a trained model"), true);
    addCommon(app.add_subcommand("run", "fuzzify, train and evaluate in one go"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        applySeedFallback(cfg);
        if (command == "fuzzify") return cmdFuzzify(cfg);
        if (command == "train") return cmdTrain(cfg);
        if (command == "evaluate") return cmdEvaluate(cfg);
        return cmdRun(cfg);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const GapError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const TooShortError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NonFiniteError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const TooFewValuesError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
