#include "bppcheck/verdict.hpp"

namespace bppcheck {

const char* to_string(Result r)
{
    switch (r) {
    case Result::Holds:
        return "holds";
    case Result::NotHolds:
        return "not-holds";
    case Result::Unknown:
        return "unknown";
    }
    return "unknown";
}

const char* to_string(Engine e) { return e == Engine::Ef ? "ef" : "eg-bounded"; }

Result kleene_not(Result r)
{
    if (r == Result::Holds)
        return Result::NotHolds;
    if (r == Result::NotHolds)
        return Result::Holds;
    return Result::Unknown;
}

Result kleene_and(Result a, Result b)
{
    if (a == Result::NotHolds || b == Result::NotHolds)
        return Result::NotHolds;
    if (a == Result::Unknown || b == Result::Unknown)
        return Result::Unknown;
    return Result::Holds;
}

} // namespace bppcheck
