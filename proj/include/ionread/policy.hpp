#pragma once

// Discrimination policy: either count photons over the full window against a
// threshold, or stop at the first photon. Threshold semantics are strict:
// count > threshold reads bright, so threshold 0 means "any photon".

#include <cstdint>

#include "ionread/rates.hpp"

namespace ionread {

enum class PolicyKind { fixed_window_threshold, first_photon_stop };

struct Policy {
    PolicyKind kind = PolicyKind::first_photon_stop;
    double window = 0.0;          // s
    std::int64_t threshold = 0;   // photons

    void validate() const {
        if (window <= 0) throw DomainError("policy window must be positive");
        if (threshold < 0) throw DomainError("policy threshold must be nonnegative");
    }
};

}  // namespace ionread
