#include "rz/distribution_file.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace rz {

namespace {

using json = nlohmann::json;

std::size_t line_of(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

/// Offset of `"key"` used as an object key, if present.
std::optional<std::size_t> key_offset(std::string_view text, std::string_view key) {
    const std::string quoted = "\"" + std::string(key) + "\"";
    for (auto pos = text.find(quoted); pos != std::string_view::npos; pos = text.find(quoted, pos + 1)) {
        auto after = text.find_first_not_of(" \t\r\n", pos + quoted.size());
        if (after != std::string_view::npos && text[after] == ':') return pos;
    }
    return std::nullopt;
}

/// Offset of element `index` of the array value of `key`. Falls back to the
/// key itself when the layout is not what we expect.
std::optional<std::size_t> element_offset(std::string_view text, std::string_view key, std::size_t index) {
    const auto k = key_offset(text, key);
    if (!k) return std::nullopt;
    const auto open = text.find('[', *k);
    if (open == std::string_view::npos) return k;
    int depth = 1;
    bool in_string = false;
    std::size_t seen = 0;
    for (std::size_t i = open + 1; i < text.size(); ++i) {
        const char c = text[i];
        if (in_string) {
            if (c == '\\') {
                ++i;
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        const bool blank = c == ' ' || c == '\t' || c == '\r' || c == '\n';
        if (depth == 1 && seen == index && !blank && c != ',' && c != ']') return i;
        if (c == '"') {
            in_string = true;
        } else if (c == '[' || c == '{') {
            ++depth;
        } else if (c == ']' || c == '}') {
            if (--depth == 0) break;
        } else if (c == ',' && depth == 1) {
            ++seen;
        }
    }
    return k;
}

[[noreturn]] void fail_at(std::string_view text, std::optional<std::size_t> offset, const std::string& what) {
    std::string prefix = "distribution";
    if (offset) prefix += ", line " + std::to_string(line_of(text, *offset));
    throw Error(ErrorCode::ParseError, prefix + ": " + what);
}

}  // namespace

DiscreteDistribution parse_distribution(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail_at(text, e.byte == 0 ? 0 : e.byte - 1, e.what());
    }
    if (!j.is_object()) fail_at(text, 0, "expected an object with dim, atoms and weights");
    for (const char* field : {"dim", "atoms", "weights"}) {
        if (!j.contains(field)) fail_at(text, std::nullopt, std::string("missing field '") + field + "'");
    }

    const json& jdim = j["dim"];
    if (!jdim.is_number_integer() || jdim.get<long long>() < 1) {
        fail_at(text, key_offset(text, "dim"), "dim must be a positive integer");
    }
    const int dim = jdim.get<int>();

    const json& jatoms = j["atoms"];
    const json& jweights = j["weights"];
    if (!jatoms.is_array()) fail_at(text, key_offset(text, "atoms"), "atoms must be an array");
    if (!jweights.is_array()) fail_at(text, key_offset(text, "weights"), "weights must be an array");

    std::vector<Eigen::VectorXd> atoms;
    for (std::size_t k = 0; k < jatoms.size(); ++k) {
        const json& a = jatoms[k];
        if (!a.is_array() || a.size() != static_cast<std::size_t>(dim)) {
            fail_at(text, element_offset(text, "atoms", k),
                    "atom " + std::to_string(k) + " must be an array of " + std::to_string(dim) + " numbers");
        }
        Eigen::VectorXd p(dim);
        for (int i = 0; i < dim; ++i) {
            if (!a[static_cast<std::size_t>(i)].is_number()) {
                fail_at(text, element_offset(text, "atoms", k), "atom " + std::to_string(k) + " has a non-numeric coordinate");
            }
            p(i) = a[static_cast<std::size_t>(i)].get<double>();
        }
        atoms.push_back(std::move(p));
    }

    std::vector<double> weights;
    for (std::size_t k = 0; k < jweights.size(); ++k) {
        const json& w = jweights[k];
        try {
            if (w.is_number()) {
                weights.push_back(w.get<double>());
            } else if (w.is_string()) {
                weights.push_back(parse_weight(w.get<std::string>()));
            } else {
                throw Error(ErrorCode::ParseError, "weight must be a number or a \"p/q\" string");
            }
        } catch (const Error& e) {
            fail_at(text, element_offset(text, "weights", k), "weight " + std::to_string(k) + ": " + e.what());
        }
    }

    try {
        return make_distribution(dim, atoms, weights);
    } catch (const Error& e) {
        const bool about_weights = e.code() == ErrorCode::NonPositiveWeight || e.code() == ErrorCode::WeightsDoNotSumToOne;
        const auto where = key_offset(text, about_weights ? "weights" : "atoms");
        throw Error(e.code(), "distribution" + (where ? ", line " + std::to_string(line_of(text, *where)) : std::string()) +
                                  ": " + e.what());
    }
}

DiscreteDistribution load_distribution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open distribution file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_distribution(buf.str());
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

}  // namespace rz
