#pragma once

#include <string>
#include <vector>

#include "apc/pfa.hpp"
#include "apc/word.hpp"

namespace apc {

/// One line of the append-only witness file.
struct StoreRecord {
    std::string word;
    int alphabet = 2;
    int k = 0;
    Pfa witness;
    Rat exact_gap;
    std::string provenance;
    std::string timestamp;
};

/// Append-only line-delimited JSON store of verified gap witnesses.
/// Records re-verify on load; duplicates on (word, k) keep the larger gap.
class WitnessStore {
public:
    explicit WitnessStore(std::string path);

    /// $APC_STORE_PATH, or apc-witnesses.jsonl in the working directory.
    static std::string default_path();

    const std::string& path() const { return path_; }

    /// Verifies the gap exactly and appends; returns the stored record.
    StoreRecord add(const Word& w, const Pfa& witness, const std::string& provenance);

    struct Status {
        StoreRecord record;
        bool verified = false;
        std::string note;
    };

    /// Every parseable line with its re-verification outcome.
    std::vector<Status> verify_all() const;

    /// Verified records only, deduplicated by (word, k) keeping the best.
    std::vector<StoreRecord> load() const;

private:
    std::string path_;
};

} // namespace apc
