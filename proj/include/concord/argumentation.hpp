#pragma once
// Argumentation frameworks, weighting functions and the precedence
// properties used to filter a weighting library.

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace concord {

// Directed attack graph over named arguments. Arguments keep declaration
// order, attacks keep insertion order. Self-attacks are legal; duplicate
// arguments, duplicate attack pairs and undeclared endpoints are not.
class ArgumentationFramework {
public:
    ArgumentationFramework(std::vector<std::string> arguments,
                           std::vector<std::pair<std::string, std::string>> attacks);

    const std::vector<std::string>& arguments() const noexcept { return arguments_; }
    const std::vector<std::pair<std::string, std::string>>& attacks() const noexcept {
        return attacks_;
    }

    std::size_t size() const noexcept { return arguments_.size(); }
    bool has_argument(const std::string& id) const;
    // Position in declaration order, -1 when unknown.
    int index_of(const std::string& id) const;

    // Attackers of `id` in declaration order; ValidationError on unknown ids.
    std::vector<std::string> attackers(const std::string& id) const;
    // Index-level view used by the hot paths.
    const std::vector<int>& attacker_indices(std::size_t index) const {
        return attackers_[index];
    }

    friend bool operator==(const ArgumentationFramework& a, const ArgumentationFramework& b) {
        return a.arguments_ == b.arguments_ && a.attacks_ == b.attacks_;
    }

private:
    std::vector<std::string> arguments_;
    std::vector<std::pair<std::string, std::string>> attacks_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<int>> attackers_;
};

// Named assignment of a nonnegative strength to every argument. Zero is an
// admissible value; the map order is the serialization order.
struct WeightingFunction {
    std::string name;
    std::vector<std::pair<std::string, double>> values;

    bool has(const std::string& id) const;
    // ValidationError (naming this weighting and the id) when absent.
    double at(const std::string& id) const;

    friend bool operator==(const WeightingFunction&, const WeightingFunction&) = default;
};

// Throws ValidationError unless w covers af's arguments exactly, with finite
// values >= 0.
void validate_weighting(const ArgumentationFramework& af, const WeightingFunction& w);

enum class WeightingProperty {
    // Unattacked arguments strictly outweigh attacked ones.
    VoidPrecedence,
    // Fewer direct attackers means a strictly greater weight.
    CardinalityPrecedence,
    // Non-self-attacking arguments strictly outweigh self-attacking ones.
    SelfContradiction,
    // All argument weights pairwise distinct (exact comparison).
    AllDifferent,
};

inline constexpr WeightingProperty kAllProperties[] = {
    WeightingProperty::VoidPrecedence,
    WeightingProperty::CardinalityPrecedence,
    WeightingProperty::SelfContradiction,
    WeightingProperty::AllDifferent,
};

// Wire names: "void", "card", "self", "all_different".
std::string_view property_name(WeightingProperty p);
std::optional<WeightingProperty> property_from_name(std::string_view name);

bool check_property(const ArgumentationFramework& af, const WeightingFunction& w,
                    WeightingProperty p);

// Candidates that survived every property in `properties`, in input order.
struct WeightingLibrary {
    ArgumentationFramework af;
    std::vector<WeightingFunction> weightings;
    std::vector<WeightingProperty> properties;
};

// ValidationError on duplicate candidate names or non-total candidates.
WeightingLibrary filter_library(const ArgumentationFramework& af,
                                const std::vector<WeightingFunction>& candidates,
                                const std::vector<WeightingProperty>& omega);

// Library populator: fixed point of w(a) = 1 / (1 + sum of attacker weights),
// iterated from all-ones until the max componentwise change drops below
// `tolerance`. Values land in (0, 1]; unattacked arguments stay at exactly 1.
// ComputeError if the cap is hit first.
WeightingFunction hcat_weighting(const ArgumentationFramework& af, double tolerance,
                                 int max_iterations = 10000);

}  // namespace concord
