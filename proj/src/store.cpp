#include "apc/store.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>

#include "apc/errors.hpp"
#include "apc/json_io.hpp"

namespace apc {

namespace {

std::string utc_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json record_to_json(const StoreRecord& r) {
    return json{{"word", r.word},       {"alphabet", r.alphabet},
                {"k", r.k},             {"witness", pfa_to_json(r.witness)},
                {"gap", rat_str(r.exact_gap)}, {"provenance", r.provenance},
                {"timestamp", r.timestamp}};
}

StoreRecord record_from_json(const json& j) {
    StoreRecord r;
    r.word = j.at("word").get<std::string>();
    r.alphabet = j.at("alphabet").get<int>();
    r.k = j.at("k").get<int>();
    r.witness = rational_pfa_from_json(j.at("witness"));
    r.exact_gap = parse_rat(j.at("gap").get<std::string>());
    r.provenance = j.value("provenance", "");
    r.timestamp = j.value("timestamp", "");
    return r;
}

} // namespace

WitnessStore::WitnessStore(std::string path) : path_(std::move(path)) {}

std::string WitnessStore::default_path() {
    if (const char* env = std::getenv("APC_STORE_PATH")) return env;
    return "apc-witnesses.jsonl";
}

StoreRecord WitnessStore::add(const Word& w, const Pfa& witness, const std::string& provenance) {
    require_valid(witness);
    Rat g = gap(witness, w);
    if (!(g > 0)) throw input_error("witness has no positive gap on " + w.str());

    StoreRecord r;
    r.word = w.str();
    r.alphabet = w.alphabet.size;
    r.k = witness.k;
    r.witness = witness;
    r.exact_gap = g;
    r.provenance = provenance;
    r.timestamp = utc_now();

    std::ofstream out(path_, std::ios::app);
    if (!out) throw input_error("cannot open witness store at " + path_);
    out << record_to_json(r).dump() << "\n";
    return r;
}

std::vector<WitnessStore::Status> WitnessStore::verify_all() const {
    std::vector<Status> out;
    std::ifstream in(path_);
    if (!in) return out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Status st;
        try {
            st.record = record_from_json(json::parse(line));
            Word w = Word::parse(st.record.word, st.record.alphabet);
            Rat g = gap(st.record.witness, w);
            if (!(g > 0))
                st.note = "stored witness no longer has a positive gap";
            else if (g != st.record.exact_gap)
                st.note = "stored gap does not match recomputation";
            else
                st.verified = true;
        } catch (const std::exception& e) {
            st.note = e.what();
        }
        out.push_back(std::move(st));
    }
    return out;
}

std::vector<StoreRecord> WitnessStore::load() const {
    std::map<std::pair<std::string, int>, StoreRecord> best;
    for (auto& st : verify_all()) {
        if (!st.verified) continue;
        auto key = std::make_pair(st.record.word, st.record.k);
        auto it = best.find(key);
        if (it == best.end() || st.record.exact_gap > it->second.exact_gap)
            best[key] = std::move(st.record);
    }
    std::vector<StoreRecord> out;
    out.reserve(best.size());
    for (auto& [key, rec] : best) out.push_back(std::move(rec));
    return out;
}

} // namespace apc
