#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bppcheck {

enum class Result { Holds, NotHolds, Unknown };
enum class Engine { Ef, EgBounded };

[[nodiscard]] const char* to_string(Result r);
[[nodiscard]] const char* to_string(Engine e);

struct VerdictStats
{
    std::size_t n_vars = 0;
    std::size_t n_asserts = 0;
    double solver_ms = 0;
    std::size_t solver_calls = 0;
};

using Witness = std::vector<std::pair<std::string, std::int64_t>>;

struct Verdict
{
    Result result = Result::Unknown;
    Engine engine = Engine::Ef;
    std::optional<int> k; // set iff engine == EgBounded
    std::optional<Witness> witness;
    VerdictStats stats;
};

// Kleene connectives over holds / not-holds / unknown.
[[nodiscard]] Result kleene_not(Result r);
[[nodiscard]] Result kleene_and(Result a, Result b);

} // namespace bppcheck
