#include "fuzzyts/model_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fuzzyts {

namespace {

constexpr std::uint64_t FNV_OFFSET = 0xcbf29ce484222325ull;
constexpr std::uint64_t FNV_PRIME = 0x100000001b3ull;

class Fnv1a {
public:
    void feed(const std::string& text) {
        for (unsigned char c : text) {
            hash_ ^= c;
            hash_ *= FNV_PRIME;
        }
    }

    void feed(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g;", v);
        feed(std::string(buf));
    }

    void feed(long long v) { feed(std::to_string(v) + ";"); }

    std::uint64_t value() const { return hash_; }

private:
    std::uint64_t hash_ = FNV_OFFSET;
};

std::string hexString(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%016" PRIx64, v);
    return std::string(buf);
}

std::uint64_t parseHex(const std::string& text) {
    std::uint64_t v = 0;
    if (std::sscanf(text.c_str(), "0x%" SCNx64, &v) != 1) {
        throw ModelFormatError("bad fingerprint string: " + text);
    }
    return v;
}

using json = nlohmann::json;

} // namespace

std::uint64_t seriesFingerprint(const TimeSeries& series) {
    Fnv1a h;
    for (const Observation& o : series.observations()) {
        h.feed(o.t);
        h.feed(o.value);
    }
    return h.value();
}

std::uint64_t partitioningFingerprint(const Partitioning& partitioning) {
    Fnv1a h;
    h.feed(partitioning.universe.lower);
    h.feed(partitioning.universe.upper);
    h.feed(partitioning.segment_length);
    for (const TrapezoidalSet& s : partitioning.sets) {
        h.feed(static_cast<long long>(s.index));
        h.feed(s.a);
        h.feed(s.b);
        h.feed(s.c);
        h.feed(s.d);
    }
    return h.value();
}

std::string saveModel(const TrainedModel& model) {
    json doc;
    doc["format"] = "fuzzyts-model";
    doc["version"] = 1;
    doc["seed"] = model.seed;
    doc["series_fingerprint"] = hexString(model.series_fingerprint);

    doc["stats"] = {{"avg_distance", model.stats.avg_distance},
                    {"std_dev", model.stats.std_dev},
                    {"revised_avg_distance", model.stats.revised_avg_distance}};

    json part;
    part["universe"] = {{"lower", model.partitioning.universe.lower},
                        {"upper", model.partitioning.universe.upper}};
    part["segment_length"] = model.partitioning.segment_length;
    part["fingerprint"] = hexString(model.rulebase.partitioning_fingerprint);
    part["sets"] = json::array();
    for (const TrapezoidalSet& s : model.partitioning.sets) {
        part["sets"].push_back({{"index", s.index}, {"a", s.a}, {"b", s.b}, {"c", s.c}, {"d", s.d}});
    }
    doc["partitioning"] = part;

    const PsoConfig& pso = model.config.pso;
    doc["pso"] = {{"inertia", pso.inertia},       {"c1", pso.c1},
                  {"c2", pso.c2},                 {"v_min", pso.v_min},
                  {"v_max", pso.v_max},           {"pos_min", pso.pos_min},
                  {"pos_max", pso.pos_max},       {"n_particles", pso.n_particles},
                  {"max_iterations", pso.max_iterations}, {"target_fitness", pso.target_fitness}};
    doc["training"] = {{"runs", model.config.runs}};

    doc["rules"] = json::array();
    for (const ForecastRule& rule : model.rulebase.rules) {
        json r;
        r["label"] = rule.label;
        r["conditions"] = json::array();
        for (const RuleCondition& c : rule.conditions) {
            r["conditions"].push_back({{"lag", c.lag}, {"set", c.set}});
        }
        r["anchors"] = rule.anchor_ts;
        if (rule.weights) {
            r["weights"] = *rule.weights;
            auto it = model.rule_fits.find(rule.label);
            if (it != model.rule_fits.end()) {
                r["fit"] = {{"fitness", it->second.fitness},
                            {"iterations", it->second.iterations_used},
                            {"converged", it->second.converged},
                            {"best_restart", it->second.best_restart}};
            }
        }
        doc["rules"].push_back(r);
    }
    return doc.dump(2) + "\n";
}

void saveModelFile(const TrainedModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write model file: " + path);
    out << saveModel(model);
}

TrainedModel loadModel(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ModelFormatError(std::string("model is not valid JSON: ") + e.what());
    }
    try {
        if (doc.at("format").get<std::string>() != "fuzzyts-model") {
            throw ModelFormatError("not a fuzzyts model document");
        }
        TrainedModel model;
        model.seed = doc.at("seed").get<std::uint64_t>();
        model.series_fingerprint = parseHex(doc.at("series_fingerprint").get<std::string>());

        const json& stats = doc.at("stats");
        model.stats.avg_distance = stats.at("avg_distance").get<double>();
        model.stats.std_dev = stats.at("std_dev").get<double>();
        model.stats.revised_avg_distance = stats.at("revised_avg_distance").get<double>();

        const json& part = doc.at("partitioning");
        model.partitioning.universe.lower = part.at("universe").at("lower").get<double>();
        model.partitioning.universe.upper = part.at("universe").at("upper").get<double>();
        model.partitioning.segment_length = part.at("segment_length").get<double>();
        model.rulebase.partitioning_fingerprint = parseHex(part.at("fingerprint").get<std::string>());
        for (const json& s : part.at("sets")) {
            model.partitioning.sets.push_back({s.at("index").get<int>(), s.at("a").get<double>(),
                                               s.at("b").get<double>(), s.at("c").get<double>(),
                                               s.at("d").get<double>()});
        }

        const json& pso = doc.at("pso");
        model.config.pso.inertia = pso.at("inertia").get<double>();
        model.config.pso.c1 = pso.at("c1").get<double>();
        model.config.pso.c2 = pso.at("c2").get<double>();
        model.config.pso.v_min = pso.at("v_min").get<double>();
        model.config.pso.v_max = pso.at("v_max").get<double>();
        model.config.pso.pos_min = pso.at("pos_min").get<double>();
        model.config.pso.pos_max = pso.at("pos_max").get<double>();
        model.config.pso.n_particles = pso.at("n_particles").get<int>();
        model.config.pso.max_iterations = pso.at("max_iterations").get<int>();
        model.config.pso.target_fitness = pso.at("target_fitness").get<double>();
        model.config.pso.seed = model.seed;
        model.config.runs = doc.at("training").at("runs").get<int>();

        for (const json& r : doc.at("rules")) {
            ForecastRule rule;
            rule.label = r.at("label").get<int>();
            for (const json& c : r.at("conditions")) {
                rule.conditions.push_back({c.at("lag").get<int>(), c.at("set").get<int>()});
            }
            rule.anchor_ts = r.at("anchors").get<std::vector<long long>>();
            if (r.contains("weights")) {
                rule.weights = r.at("weights").get<std::vector<double>>();
                if (r.contains("fit")) {
                    RuleFit fit;
                    fit.fitness = r.at("fit").at("fitness").get<double>();
                    fit.iterations_used = r.at("fit").at("iterations").get<int>();
                    fit.converged = r.at("fit").at("converged").get<bool>();
                    fit.best_restart = r.at("fit").at("best_restart").get<int>();
                    model.rule_fits[rule.label] = fit;
                }
            }
            model.rulebase.rules.push_back(std::move(rule));
        }
        return model;
    } catch (const json::exception& e) {
        throw ModelFormatError(std::string("model document is missing fields: ") + e.what());
    }
}

TrainedModel loadModelFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelFormatError("cannot open model file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return loadModel(buffer.str());
}

} // namespace fuzzyts
