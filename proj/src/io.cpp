#include "concord/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "concord/errors.hpp"
#include "json.hpp"

namespace concord::io {

using nlohmann::ordered_json;

double round12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

namespace {

ordered_json parse_text(const std::string& text, const char* what) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string(what) + ": " + e.what());
    }
}

const ordered_json& field(const ordered_json& j, const char* key, const char* what) {
    if (!j.is_object())
        throw ValidationError(std::string(what) + ": expected a JSON object");
    auto it = j.find(key);
    if (it == j.end())
        throw ValidationError(std::string(what) + ": missing \"" + key + "\"");
    return *it;
}

std::vector<std::string> string_list(const ordered_json& j, const char* what) {
    if (!j.is_array())
        throw ValidationError(std::string(what) + ": expected an array of strings");
    std::vector<std::string> out;
    out.reserve(j.size());
    for (const auto& item : j) {
        if (!item.is_string())
            throw ValidationError(std::string(what) + ": expected an array of strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

double number(const ordered_json& j, const char* what) {
    if (!j.is_number())
        throw ValidationError(std::string(what) + ": expected a number");
    return j.get<double>();
}

WeightingFunction weighting_from_json(const ordered_json& j) {
    const char* what = "weighting";
    const auto& name = field(j, "name", what);
    if (!name.is_string()) throw ValidationError("weighting: \"name\" must be a string");
    WeightingFunction w;
    w.name = name.get<std::string>();
    const auto& values = field(j, "values", what);
    if (!values.is_object())
        throw ValidationError("weighting '" + w.name + "': \"values\" must be an object");
    for (const auto& [id, value] : values.items()) {
        const double v = number(value, "weighting value");
        if (v < 0.0)
            throw ValidationError("weighting '" + w.name + "': value for '" + id +
                                  "' must be >= 0");
        w.values.push_back({id, v});
    }
    return w;
}

ordered_json weighting_json(const WeightingFunction& w) {
    ordered_json values = ordered_json::object();
    for (const auto& [id, v] : w.values) values[id] = round12(v);
    return ordered_json{{"name", w.name}, {"values", std::move(values)}};
}

}  // namespace

ArgumentationFramework parse_af(const std::string& text) {
    const auto j = parse_text(text, "framework");
    auto arguments = string_list(field(j, "arguments", "framework"), "framework arguments");
    const auto& attacks_json = field(j, "attacks", "framework");
    if (!attacks_json.is_array())
        throw ValidationError("framework: \"attacks\" must be an array of pairs");
    std::vector<std::pair<std::string, std::string>> attacks;
    attacks.reserve(attacks_json.size());
    for (const auto& pair : attacks_json) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
            !pair[1].is_string())
            throw ValidationError("framework: each attack must be a [from, to] string pair");
        attacks.push_back({pair[0].get<std::string>(), pair[1].get<std::string>()});
    }
    return ArgumentationFramework(std::move(arguments), std::move(attacks));
}

std::string af_to_json(const ArgumentationFramework& af) {
    ordered_json attacks = ordered_json::array();
    for (const auto& [src, dst] : af.attacks()) attacks.push_back({src, dst});
    ordered_json j{{"arguments", af.arguments()}, {"attacks", std::move(attacks)}};
    return j.dump();
}

WeightingFunction parse_weighting(const std::string& text) {
    return weighting_from_json(parse_text(text, "weighting"));
}

std::string weighting_to_json(const WeightingFunction& w) { return weighting_json(w).dump(); }

std::vector<WeightingFunction> parse_weightings(const std::string& text) {
    const auto j = parse_text(text, "weightings");
    std::vector<WeightingFunction> out;
    if (j.is_array())
        for (const auto& item : j) out.push_back(weighting_from_json(item));
    else
        out.push_back(weighting_from_json(j));
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t l = i + 1; l < out.size(); ++l)
            if (out[i].name == out[l].name)
                throw ValidationError("duplicate weighting name '" + out[i].name + "'");
    return out;
}

std::string weightings_to_json(const std::vector<WeightingFunction>& ws) {
    ordered_json j = ordered_json::array();
    for (const auto& w : ws) j.push_back(weighting_json(w));
    return j.dump();
}

TrustMatrix parse_trust_matrix(const std::string& text) {
    const auto j = parse_text(text, "trust matrix");
    auto agents = string_list(field(j, "agents", "trust matrix"), "trust matrix agents");
    const auto& rows_json = field(j, "rows", "trust matrix");
    if (!rows_json.is_array())
        throw ValidationError("trust matrix: \"rows\" must be an array of rows");
    std::vector<std::vector<double>> rows;
    rows.reserve(rows_json.size());
    for (const auto& row : rows_json) {
        if (!row.is_array())
            throw ValidationError("trust matrix: each row must be an array of numbers");
        std::vector<double> values;
        values.reserve(row.size());
        for (const auto& v : row) values.push_back(number(v, "trust matrix entry"));
        rows.push_back(std::move(values));
    }
    auto m = make_trust_matrix(std::move(agents), std::move(rows));
    std::string why;
    if (!validate(m, &why)) throw ValidationError("invalid trust matrix: " + why);
    return m;
}

std::string trust_matrix_to_json(const TrustMatrix& m) {
    const std::size_t k = m.size();
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < k; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < k; ++j) row.push_back(round12(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    ordered_json j{{"agents", m.agents}, {"rows", std::move(rows)}};
    return j.dump();
}

ScoringProfile parse_profile(const std::string& text) {
    const auto j = parse_text(text, "profile");
    ScoringProfile p;
    p.agents = string_list(field(j, "agents", "profile"), "profile agents");

    const auto& considered = field(j, "considered", "profile");
    const auto& scores = field(j, "scores", "profile");
    if (!considered.is_object())
        throw ValidationError("profile: \"considered\" must be an object");
    if (!scores.is_object()) throw ValidationError("profile: \"scores\" must be an object");
    for (const auto& [agent, value] : considered.items())
        if (std::find(p.agents.begin(), p.agents.end(), agent) == p.agents.end())
            throw ValidationError("profile: considered lists unknown agent '" + agent + "'");
    for (const auto& [agent, value] : scores.items())
        if (std::find(p.agents.begin(), p.agents.end(), agent) == p.agents.end())
            throw ValidationError("profile: scores list unknown agent '" + agent + "'");

    // M = union of the considered sets, in first-appearance order.
    for (const auto& agent : p.agents) {
        auto it = considered.find(agent);
        if (it == considered.end())
            throw ValidationError("profile: agent '" + agent + "' missing from considered");
        p.considered.push_back(string_list(*it, "profile considered set"));
        for (const auto& name : p.considered.back())
            if (std::find(p.weightings.begin(), p.weightings.end(), name) ==
                p.weightings.end())
                p.weightings.push_back(name);
    }
    for (std::size_t i = 0; i < p.agents.size(); ++i) {
        std::vector<double> row(p.weightings.size(), 0.0);
        auto it = scores.find(p.agents[i]);
        if (it != scores.end()) {
            if (!it->is_object())
                throw ValidationError("profile: scores for '" + p.agents[i] +
                                      "' must be an object");
            for (const auto& [name, value] : it->items()) {
                const auto& mine = p.considered[i];
                if (std::find(mine.begin(), mine.end(), name) == mine.end())
                    throw ValidationError("profile: agent '" + p.agents[i] +
                                          "' scores unconsidered weighting '" + name + "'");
                const auto pos = std::find(p.weightings.begin(), p.weightings.end(), name);
                row[static_cast<std::size_t>(pos - p.weightings.begin())] =
                    number(value, "profile score");
            }
        }
        p.scores.push_back(std::move(row));
    }
    std::string why;
    if (!validate_profile(p, &why)) throw ValidationError("invalid profile: " + why);
    return p;
}

std::string profile_to_json(const ScoringProfile& p) {
    ordered_json considered = ordered_json::object();
    ordered_json scores = ordered_json::object();
    for (std::size_t i = 0; i < p.agents.size(); ++i) {
        considered[p.agents[i]] = p.considered[i];
        ordered_json mine = ordered_json::object();
        for (const auto& name : p.considered[i]) {
            const auto pos = std::find(p.weightings.begin(), p.weightings.end(), name);
            mine[name] =
                round12(p.scores[i][static_cast<std::size_t>(pos - p.weightings.begin())]);
        }
        scores[p.agents[i]] = std::move(mine);
    }
    ordered_json j{{"agents", p.agents},
                   {"considered", std::move(considered)},
                   {"scores", std::move(scores)}};
    return j.dump();
}

ConsensusResult parse_result(const std::string& text) {
    const auto j = parse_text(text, "result");
    ConsensusResult r;
    const auto& pi = field(j, "pi", "result");
    if (!pi.is_array()) throw ValidationError("result: \"pi\" must be an array");
    for (const auto& v : pi) r.pi.push_back(number(v, "result pi entry"));

    const auto& scores = field(j, "consensus_scores", "result");
    if (!scores.is_object())
        throw ValidationError("result: \"consensus_scores\" must be an object");
    for (const auto& [name, value] : scores.items())
        r.consensus_scores.push_back({name, number(value, "result score")});

    r.output_set = string_list(field(j, "output_set", "result"), "result output_set");

    const auto& aggregated = field(j, "aggregated", "result");
    if (!aggregated.is_null()) r.aggregated = weighting_from_json(aggregated);

    const auto& steps = field(j, "steps", "result");
    if (!steps.is_number_integer()) throw ValidationError("result: \"steps\" must be an integer");
    r.steps = steps.get<int>();
    r.epsilon = number(field(j, "epsilon", "result"), "result epsilon");
    const auto& converged = field(j, "converged", "result");
    if (!converged.is_boolean())
        throw ValidationError("result: \"converged\" must be a boolean");
    r.converged = converged.get<bool>();
    return r;
}

std::string result_to_json(const ConsensusResult& r) {
    ordered_json pi = ordered_json::array();
    for (double v : r.pi) pi.push_back(round12(v));
    ordered_json scores = ordered_json::object();
    for (const auto& [name, s] : r.consensus_scores) scores[name] = round12(s);
    ordered_json j{{"pi", std::move(pi)},
                   {"consensus_scores", std::move(scores)},
                   {"output_set", r.output_set},
                   {"aggregated", r.aggregated ? weighting_json(*r.aggregated)
                                              : ordered_json(nullptr)},
                   {"steps", r.steps},
                   {"epsilon", round12(r.epsilon)},
                   {"converged", r.converged}};
    return j.dump();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write file '" + path.string() + "'");
    out << text;
    if (!out.good()) throw ValidationError("failed writing file '" + path.string() + "'");
}

}  // namespace concord::io
