#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "apc/classical.hpp"
#include "apc/pfa.hpp"
#include "apc/word.hpp"

namespace apc {

/// Tuning knobs shared by the gamma searches. Runs are deterministic in
/// (seed, restarts); extra witnesses can be injected as search seeds.
struct GammaOptions {
    int restarts = 24;
    uint64_t seed = 1;
    double eps = 1.0 / 128; // default certification width 2^-7
    uint64_t max_boxes = 4'000'000;
    uint64_t gap_budget = kDefaultGapBudget;
    uint64_t classical_budget = kDefaultSearchBudget;
    std::vector<Pfa> seed_machines;
};

/// Certified bracket for the best k-state gap on a word: lb comes from an
/// exact rational re-check of the search's best machine, ub from interval
/// branch and bound.
struct GapEnclosure {
    int k = 0;
    Rat lb;
    Pfa lb_witness;
    double ub = 1.0;
    double eps_achieved = 1.0;
    uint64_t boxes = 0;
    int restarts = 0;
    uint64_t seed = 0;
};

/// Best exactly-verified gap found by multi-start projected local search
/// over the stochastic-parameter polytope, one pass per accepting pattern.
std::pair<Rat, Pfa> gamma_lower(int k, const Word& w, const GammaOptions& opt = {});

/// Certified upper bound on the best k-state gap, within eps of it unless
/// the box budget runs out (the achieved width is reported via enclosure
/// variants). Optionally stops early once the bound falls below
/// stop_below, still returning a valid certificate.
double gamma_upper(int k, const Word& w, double eps, const GammaOptions& opt = {},
                   std::optional<double> stop_below = std::nullopt);

GapEnclosure gamma_enclosure(int k, const Word& w, const GammaOptions& opt = {});

/// Least k whose best k-state gap certifiedly exceeds delta; Undetermined
/// carries the pivotal state count and its enclosure when delta cannot be
/// separated from the bracket at the configured precision.
struct ApDeltaResult {
    std::optional<int> value;
    int pivot_k = 0;
    GapEnclosure enclosure; // enclosure at the answer or at the pivot
};

ApDeltaResult ap_delta(const Word& w, double delta, const GammaOptions& opt = {});

/// Enclosures of the best k-state gaps for 2 <= k <= A_D(w)-1; an entry is
/// a certified discontinuity when its bracket stays strictly inside (0,1).
struct DiscontinuityPoint {
    int k = 0;
    GapEnclosure enclosure;
    bool certified = false;
};

std::vector<DiscontinuityPoint> enumerate_E(const Word& w, const GammaOptions& opt = {});

/// Streams every valid rational PFA whose pi and transition entries lie on
/// the dyadic grid j*2^-(n+1), with every nontrivial accepting vector.
/// Centers of a 2^-n cover of the k-state parameter space.
void dyadic_cover(int k, int alphabet, int n, const std::function<void(const Pfa&)>& sink,
                  uint64_t size_guard = uint64_t(1) << 24);

/// Appends inert states (self-loops, never started, never accepting);
/// rho and gap are unchanged. Used to carry witnesses up to larger k.
Pfa pad_with_inert_states(const Pfa& A, int k);

} // namespace apc
