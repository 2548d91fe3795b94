#pragma once

#include <cstdint>
#include <stdexcept>

namespace proxsamp {

/// Exact per-category accounting of oracle traffic.  A ledger belongs to a
/// single chain; independent chains keep their own ledger and merge at join
/// points, so no counter is ever contended.
struct QueryLedger {
    std::uint64_t membership_calls = 0;
    std::uint64_t evaluation_calls = 0;
    std::uint64_t proposals_drawn = 0;
    std::uint64_t restarts = 0;
    std::uint64_t iterations_completed = 0;

    void merge(const QueryLedger& other) {
        membership_calls += other.membership_calls;
        evaluation_calls += other.evaluation_calls;
        proposals_drawn += other.proposals_drawn;
        restarts += other.restarts;
        iterations_completed += other.iterations_completed;
    }

    bool all_zero() const {
        return membership_calls == 0 && evaluation_calls == 0 &&
               proposals_drawn == 0 && restarts == 0 &&
               iterations_completed == 0;
    }

    /// Internal consistency of counters produced by the samplers in this
    /// library.  tau is the restart threshold of the run being audited.
    void check_consistency(std::uint64_t tau) const {
        if (iterations_completed > proposals_drawn && iterations_completed > 0)
            throw std::logic_error("ledger: iterations exceed proposals");
        if (restarts > 0 && restarts * tau > proposals_drawn)
            throw std::logic_error("ledger: restarts*tau exceed proposals");
    }
};

}  // namespace proxsamp
