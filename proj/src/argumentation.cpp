#include "concord/argumentation.hpp"

#include <cmath>
#include <set>
#include <unordered_set>

#include "concord/errors.hpp"

namespace concord {

ArgumentationFramework::ArgumentationFramework(
    std::vector<std::string> arguments, std::vector<std::pair<std::string, std::string>> attacks)
    : arguments_(std::move(arguments)), attacks_(std::move(attacks)) {
    index_.reserve(arguments_.size());
    for (std::size_t i = 0; i < arguments_.size(); ++i) {
        const auto& id = arguments_[i];
        if (id.empty()) throw ValidationError("argument ids must be nonempty");
        if (!index_.emplace(id, static_cast<int>(i)).second)
            throw ValidationError("duplicate argument '" + id + "'");
    }
    attackers_.resize(arguments_.size());
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& [src, dst] : attacks_) {
        const int s = index_of(src);
        const int d = index_of(dst);
        if (s < 0) throw ValidationError("attack source '" + src + "' is not an argument");
        if (d < 0) throw ValidationError("attack target '" + dst + "' is not an argument");
        if (!seen.emplace(src, dst).second)
            throw ValidationError("duplicate attack (" + src + ", " + dst + ")");
        attackers_[d].push_back(s);
    }
}

bool ArgumentationFramework::has_argument(const std::string& id) const {
    return index_.count(id) > 0;
}

int ArgumentationFramework::index_of(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

std::vector<std::string> ArgumentationFramework::attackers(const std::string& id) const {
    const int i = index_of(id);
    if (i < 0) throw ValidationError("unknown argument '" + id + "'");
    std::vector<std::string> out;
    out.reserve(attackers_[i].size());
    for (int a : attackers_[i]) out.push_back(arguments_[a]);
    return out;
}

bool WeightingFunction::has(const std::string& id) const {
    for (const auto& [key, value] : values)
        if (key == id) return true;
    return false;
}

double WeightingFunction::at(const std::string& id) const {
    for (const auto& [key, value] : values)
        if (key == id) return value;
    throw ValidationError("weighting '" + name + "' has no value for argument '" + id + "'");
}

void validate_weighting(const ArgumentationFramework& af, const WeightingFunction& w) {
    std::unordered_set<std::string> seen;
    for (const auto& [id, value] : w.values) {
        if (!af.has_argument(id))
            throw ValidationError("weighting '" + w.name + "' covers unknown argument '" + id +
                                  "'");
        if (!seen.insert(id).second)
            throw ValidationError("weighting '" + w.name + "' repeats argument '" + id + "'");
        if (!std::isfinite(value) || value < 0.0)
            throw ValidationError("weighting '" + w.name + "' has an invalid value for '" + id +
                                  "' (finite and >= 0 required)");
    }
    if (seen.size() != af.size())
        throw ValidationError("weighting '" + w.name + "' does not cover every argument");
}

std::string_view property_name(WeightingProperty p) {
    switch (p) {
        case WeightingProperty::VoidPrecedence: return "void";
        case WeightingProperty::CardinalityPrecedence: return "card";
        case WeightingProperty::SelfContradiction: return "self";
        case WeightingProperty::AllDifferent: return "all_different";
    }
    return "";
}

std::optional<WeightingProperty> property_from_name(std::string_view name) {
    for (auto p : kAllProperties)
        if (property_name(p) == name) return p;
    return std::nullopt;
}

namespace {

bool is_self_attacking(const ArgumentationFramework& af, std::size_t i) {
    for (int a : af.attacker_indices(i))
        if (a == static_cast<int>(i)) return true;
    return false;
}

}  // namespace

bool check_property(const ArgumentationFramework& af, const WeightingFunction& w,
                    WeightingProperty p) {
    validate_weighting(af, w);
    const std::size_t n = af.size();
    std::vector<double> value(n);
    for (std::size_t i = 0; i < n; ++i) value[i] = w.at(af.arguments()[i]);

    switch (p) {
        case WeightingProperty::VoidPrecedence:
            for (std::size_t a = 0; a < n; ++a) {
                if (!af.attacker_indices(a).empty()) continue;
                for (std::size_t b = 0; b < n; ++b)
                    if (!af.attacker_indices(b).empty() && !(value[a] > value[b])) return false;
            }
            return true;
        case WeightingProperty::CardinalityPrecedence:
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    if (af.attacker_indices(a).size() < af.attacker_indices(b).size() &&
                        !(value[a] > value[b]))
                        return false;
            return true;
        case WeightingProperty::SelfContradiction:
            for (std::size_t a = 0; a < n; ++a) {
                if (!is_self_attacking(af, a)) continue;
                for (std::size_t b = 0; b < n; ++b)
                    if (!is_self_attacking(af, b) && !(value[b] > value[a])) return false;
            }
            return true;
        case WeightingProperty::AllDifferent:
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = a + 1; b < n; ++b)
                    if (value[a] == value[b]) return false;
            return true;
    }
    return false;
}

WeightingLibrary filter_library(const ArgumentationFramework& af,
                                const std::vector<WeightingFunction>& candidates,
                                const std::vector<WeightingProperty>& omega) {
    std::unordered_set<std::string> names;
    for (const auto& w : candidates)
        if (!names.insert(w.name).second)
            throw ValidationError("duplicate weighting name '" + w.name + "'");

    WeightingLibrary lib{af, {}, omega};
    for (const auto& w : candidates) {
        bool keep = true;
        for (auto p : omega)
            if (!check_property(af, w, p)) {
                keep = false;
                break;
            }
        if (keep) lib.weightings.push_back(w);
    }
    return lib;
}

WeightingFunction hcat_weighting(const ArgumentationFramework& af, double tolerance,
                                 int max_iterations) {
    if (!(tolerance > 0.0)) throw ValidationError("tolerance must be > 0");
    if (max_iterations < 1) throw ValidationError("max_iterations must be >= 1");

    const std::size_t n = af.size();
    std::vector<double> value(n, 1.0), next(n);
    for (int iter = 0; iter < max_iterations; ++iter) {
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double attack_sum = 0.0;
            for (int a : af.attacker_indices(i)) attack_sum += value[a];
            next[i] = 1.0 / (1.0 + attack_sum);
            change = std::max(change, std::fabs(next[i] - value[i]));
        }
        value.swap(next);
        if (change <= tolerance) {
            WeightingFunction w;
            w.name = "hcat";
            for (std::size_t i = 0; i < n; ++i) w.values.push_back({af.arguments()[i], value[i]});
            return w;
        }
    }
    throw ComputeError("fixed-point iteration did not converge within " +
                       std::to_string(max_iterations) + " iterations");
}

}  // namespace concord
