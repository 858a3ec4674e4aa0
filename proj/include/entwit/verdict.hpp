#pragma once

#include <string_view>

namespace entwit {

enum class Verdict {
    EntanglementVerified,
    Inconclusive,
    // A CHSH value above 2*sqrt(2) can only come from a bug, never from physics.
    TsirelsonViolationError,
};

constexpr std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::EntanglementVerified: return "entanglement-verified";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::TsirelsonViolationError: return "tsirelson-violation-error";
    }
    return "unknown";
}

}  // namespace entwit
