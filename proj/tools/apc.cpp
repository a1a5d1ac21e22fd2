// apc: probabilistic automatic complexity toolkit.
// One-shot computations; JSON results on stdout, logs on stderr.
// Exit codes: 0 success, 2 bad input, 3 budget exhausted or undetermined.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "apc/blackbox.hpp"
#include "apc/classical.hpp"
#include "apc/classify.hpp"
#include "apc/enumerate.hpp"
#include "apc/errors.hpp"
#include "apc/gamma.hpp"
#include "apc/json_io.hpp"
#include "apc/store.hpp"

using namespace apc;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

struct Globals {
    uint64_t seed = 1;
    uint64_t budget = kDefaultGapBudget;
    double eps = 1.0 / 128;
    std::string mode = "rational";
    int alphabet = 0; // 0: infer from the word
    std::string store_path = WitnessStore::default_path();
    int restarts = 24;
    uint64_t max_boxes = 4'000'000;
};

Word parse_word(const Globals& g, const std::string& digits) { return Word::parse(digits, g.alphabet); }

GammaOptions gamma_options(const Globals& g) {
    GammaOptions opt;
    opt.seed = g.seed;
    opt.eps = g.eps;
    opt.restarts = g.restarts;
    opt.max_boxes = g.max_boxes;
    opt.gap_budget = g.budget;
    return opt;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"probabilistic automatic complexity toolkit"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "seed for randomized searches");
    app.add_option("--budget", g.budget, "word-enumeration budget");
    app.add_option("--eps", g.eps, "target enclosure width");
    app.add_option("--mode", g.mode, "rational|float scalar mode")->check(CLI::IsMember({"rational", "float"}));
    app.add_option("--alphabet", g.alphabet, "alphabet size (default: inferred)");
    app.add_option("--store", g.store_path, "witness store path");
    app.add_option("--restarts", g.restarts, "search restarts per accepting pattern");
    app.add_option("--boxes", g.max_boxes, "branch-and-bound box budget");

    int exit_code = 0;

    // --- core ---
    std::string pfa_path, word_str, prefix_str, nfa_path, ifs_path;
    auto* rho_cmd = app.add_subcommand("rho", "acceptance probability of a word");
    rho_cmd->add_option("--pfa", pfa_path)->required();
    rho_cmd->add_option("--word", word_str)->required();
    rho_cmd->callback([&] {
        auto any = pfa_from_json(read_json_file(pfa_path));
        Word w = parse_word(g, word_str);
        std::visit([&](const auto& A) {
            auto r = rho(A, w);
            if constexpr (std::is_same_v<std::decay_t<decltype(r)>, Rat>)
                emit({{"rho", rat_str(r)}});
            else
                emit({{"rho", r}});
        }, any);
    });

    auto* gap_cmd = app.add_subcommand("gap", "exact gap of a word");
    gap_cmd->add_option("--pfa", pfa_path)->required();
    gap_cmd->add_option("--word", word_str)->required();
    gap_cmd->callback([&] {
        auto any = pfa_from_json(read_json_file(pfa_path));
        Word w = parse_word(g, word_str);
        std::visit([&](const auto& A) {
            auto r = gap(A, w, g.budget);
            if constexpr (std::is_same_v<std::decay_t<decltype(r)>, Rat>)
                emit({{"gap", rat_str(r)}});
            else
                emit({{"gap", r}});
        }, any);
    });

    auto* drop_cmd = app.add_subcommand("drop-prefix", "advance the start distribution along a prefix");
    drop_cmd->add_option("--pfa", pfa_path)->required();
    drop_cmd->add_option("--prefix", prefix_str)->required();
    drop_cmd->callback([&] {
        Pfa A = rational_pfa_from_json(read_json_file(pfa_path));
        emit(pfa_to_json(drop_prefix(A, Word::parse(prefix_str, A.alphabet.size))));
    });

    auto* rev_cmd = app.add_subcommand("reverse", "reverse a doubly stochastic machine");
    rev_cmd->add_option("--pfa", pfa_path)->required();
    rev_cmd->callback([&] {
        Pfa A = rational_pfa_from_json(read_json_file(pfa_path));
        emit(pfa_to_json(reverse_pfa(A)));
    });

    // --- classical ---
    auto* ad_cmd = app.add_subcommand("ad", "deterministic automatic complexity");
    ad_cmd->add_option("--word", word_str)->required();
    ad_cmd->callback([&] {
        auto r = ad(parse_word(g, word_str), g.budget);
        emit({{"value", r.value}, {"optimal", r.optimal}, {"witness", dfa_to_json(r.witness)}});
        if (!r.optimal) exit_code = 3;
    });

    auto* an_cmd = app.add_subcommand("an", "nondeterministic automatic complexity");
    an_cmd->add_option("--word", word_str)->required();
    an_cmd->callback([&] {
        auto r = an(parse_word(g, word_str), g.budget);
        emit({{"value", r.value}, {"optimal", r.optimal}, {"witness", nfa_to_json(r.witness)}});
        if (!r.optimal) exit_code = 3;
    });

    auto* lift_cmd = app.add_subcommand("nfa2pfa", "stochastic lift of an NFA");
    lift_cmd->add_option("--nfa", nfa_path)->required();
    lift_cmd->callback([&] { emit(pfa_to_json(nfa_to_pfa(nfa_from_json(read_json_file(nfa_path))))); });

    // --- classification ---
    auto* cls_cmd = app.add_subcommand("classify2", "two-state witness shape of a binary word");
    cls_cmd->add_option("--word", word_str)->required();
    cls_cmd->callback([&] {
        auto fam = is_class2(Word::parse(word_str, 2));
        if (!fam) {
            emit({{"classified", false}});
            return;
        }
        emit({{"classified", true},
              {"family", class2_form_name(fam->form)},
              {"i", fam->i},
              {"n", fam->n},
              {"m", fam->m}});
    });

    auto* wit_cmd = app.add_subcommand("witness2", "construct and verify a two-state witness");
    wit_cmd->add_option("--word", word_str)->required();
    wit_cmd->callback([&] {
        auto full = witness_class2_full(Word::parse(word_str, 2));
        emit({{"word", word_str},
              {"family", class2_form_name(full.family.form)},
              {"ifs2", ifs2_to_json(full.ifs)},
              {"pfa", pfa_to_json(ifs2_to_pfa(full.ifs))},
              {"verified_up_to", full.verified_up_to}});
    });

    size_t trace_len = 8;
    auto* trace_cmd = app.add_subcommand("trace", "exact per-length extrema of a two-map system");
    trace_cmd->add_option("--ifs2", ifs_path)->required();
    trace_cmd->add_option("--length", trace_len);
    trace_cmd->callback([&] {
        Ifs2 I = ifs2_from_json(read_json_file(ifs_path));
        json out = json::array();
        size_t len = 0;
        for (const auto& e : extremal_trace(I, trace_len)) {
            ++len;
            out.push_back({{"length", len},
                           {"max", rat_str(e.max_value)},
                           {"max_arg", e.max_arg.str()},
                           {"max_unique", e.max_unique},
                           {"min", rat_str(e.min_value)},
                           {"min_arg", e.min_arg.str()},
                           {"min_unique", e.min_unique}});
        }
        emit(out);
    });

    auto* lang_cmd = app.add_subcommand("witnessed-lang", "strings uniquely maximized by a system");
    lang_cmd->add_option("--ifs2", ifs_path)->required();
    lang_cmd->add_option("--length", trace_len);
    lang_cmd->callback([&] {
        Ifs2 I = ifs2_from_json(read_json_file(ifs_path));
        auto words = witnessed_language(I, trace_len);
        json ws = json::array();
        for (const auto& w : words) ws.push_back(w.str());
        auto tail = check_regular_tail(words, trace_len);
        emit({{"words", ws}, {"tail", tail.bullet}, {"tail_matched", tail.matched}});
    });

    // --- gamma ---
    int k_states = 2;
    std::string delta_str = "1/2"; // plain decimals and num/den both parse
    auto parse_real = [](const std::string& s) {
        if (s.find('/') != std::string::npos) return rat_to_double(parse_rat(s));
        try {
            return std::stod(s);
        } catch (const std::exception&) {
            throw input_error("not a number: " + s);
        }
    };
    auto* gamma_cmd = app.add_subcommand("gamma", "certified enclosure of the best k-state gap");
    gamma_cmd->add_option("--k", k_states)->required();
    gamma_cmd->add_option("--word", word_str)->required();
    gamma_cmd->callback([&] {
        Word w = parse_word(g, word_str);
        auto enc = gamma_enclosure(k_states, w, gamma_options(g));
        emit(enclosure_to_json(enc, w));
    });

    auto* apd_cmd = app.add_subcommand("ap-delta", "least k whose best gap exceeds delta");
    apd_cmd->add_option("--word", word_str)->required();
    apd_cmd->add_option("--delta", delta_str)->required();
    apd_cmd->callback([&] {
        Word w = parse_word(g, word_str);
        auto r = ap_delta(w, parse_real(delta_str), gamma_options(g));
        if (r.value) {
            emit({{"value", *r.value}, {"enclosure", enclosure_to_json(r.enclosure, w)}});
        } else {
            emit({{"undetermined", true},
                  {"pivot_k", r.pivot_k},
                  {"enclosure", enclosure_to_json(r.enclosure, w)}});
            exit_code = 3;
        }
    });

    auto* enume_cmd = app.add_subcommand("enum-e", "gap enclosures between 2 states and the DFA size");
    enume_cmd->add_option("--word", word_str)->required();
    enume_cmd->callback([&] {
        Word w = parse_word(g, word_str);
        json out = json::array();
        for (const auto& p : enumerate_E(w, gamma_options(g)))
            out.push_back({{"k", p.k},
                           {"certified", p.certified},
                           {"enclosure", enclosure_to_json(p.enclosure, w)}});
        emit(out);
    });

    // --- enumeration ---
    SearchBudget sb;
    auto* semi_cmd = app.add_subcommand("semidecide", "semi-decide that k states suffice");
    semi_cmd->add_option("--word", word_str)->required();
    semi_cmd->add_option("--k", k_states)->required();
    semi_cmd->add_option("--max-den", sb.max_denominator);
    semi_cmd->add_option("--max-machines", sb.max_machines);
    semi_cmd->add_option("--wall", sb.wall_seconds);
    semi_cmd->callback([&] {
        auto progress = [](uint64_t machines, const Rat& best) {
            std::cerr << json{{"machines_tried", machines}, {"best_gap", rat_str(best)}}.dump()
                      << "\n";
        };
        auto r = semidecide_ap_le(parse_word(g, word_str), k_states, sb, g.seed, progress);
        json out{{"found", r.found},
                 {"machines_tried", r.machines_tried},
                 {"denominator_reached", r.denominator_reached}};
        if (r.found) {
            out["witness"] = pfa_to_json(r.witness);
            out["gap"] = rat_str(r.exact_gap);
        } else {
            exit_code = 3;
        }
        emit(out);
    });

    auto* apb_cmd = app.add_subcommand("ap-bound", "smallest witnessable state count");
    apb_cmd->add_option("--word", word_str)->required();
    apb_cmd->add_option("--max-den", sb.max_denominator);
    apb_cmd->add_option("--max-machines", sb.max_machines);
    apb_cmd->add_option("--wall", sb.wall_seconds);
    apb_cmd->callback([&] {
        auto r = ap_upper_bound(parse_word(g, word_str), sb, g.seed);
        emit({{"k", r.k},
              {"provenance", r.provenance},
              {"gap", rat_str(r.exact_gap)},
              {"witness", pfa_to_json(r.witness)}});
    });

    // --- black box ---
    std::string bb_epsilon = "0.05", bb_margin = "1/32";
    auto* bb_cmd = app.add_subcommand("blackbox", "statistical gap test by repeated sampling");
    bb_cmd->add_option("--pfa", pfa_path)->required();
    bb_cmd->add_option("--word", word_str)->required();
    bb_cmd->add_option("--delta", delta_str)->required();
    bb_cmd->add_option("--epsilon", bb_epsilon);
    bb_cmd->add_option("--margin", bb_margin)->required();
    bb_cmd->callback([&] {
        Pfa A = rational_pfa_from_json(read_json_file(pfa_path));
        Word w = Word::parse(word_str, A.alphabet.size);
        auto rep = run_experiment(A, w, parse_real(delta_str), parse_real(bb_epsilon),
                                  parse_real(bb_margin), g.seed, g.budget);
        json counts = json::object();
        for (size_t i = 0; i < rep.words.size(); ++i)
            counts[rep.words[i].str()] = rep.acceptances[i];
        json plan{{"trials", rep.plan.trials},
                  {"delta", rep.plan.delta},
                  {"epsilon", rep.plan.epsilon},
                  {"margin", rep.plan.margin},
                  {"per_string_confidence", rep.plan.per_string_confidence},
                  {"word_length", rep.plan.word_length},
                  {"alphabet", rep.plan.alphabet}};
        emit({{"verdict", rep.gap_exceeds ? "GapExceeds" : "NotExceeds"},
              {"plan", plan},
              {"seed", rep.seed},
              {"counts", counts}});
    });

    // --- store ---
    auto* store_cmd = app.add_subcommand("store", "persistent witness records");
    std::string provenance = "manual";
    auto* add_cmd = store_cmd->add_subcommand("add", "verify and append a witness");
    add_cmd->add_option("--word", word_str)->required();
    add_cmd->add_option("--pfa", pfa_path)->required();
    add_cmd->add_option("--provenance", provenance);
    add_cmd->callback([&] {
        WitnessStore store(g.store_path);
        Pfa A = rational_pfa_from_json(read_json_file(pfa_path));
        auto rec = store.add(Word::parse(word_str, A.alphabet.size), A, provenance);
        emit({{"word", rec.word}, {"k", rec.k}, {"gap", rat_str(rec.exact_gap)}, {"path", store.path()}});
    });
    auto* list_cmd = store_cmd->add_subcommand("list", "verified records, best gap per (word, k)");
    list_cmd->callback([&] {
        WitnessStore store(g.store_path);
        json out = json::array();
        for (const auto& rec : store.load())
            out.push_back({{"word", rec.word},
                           {"k", rec.k},
                           {"gap", rat_str(rec.exact_gap)},
                           {"provenance", rec.provenance},
                           {"timestamp", rec.timestamp}});
        emit(out);
    });
    auto* verify_cmd = store_cmd->add_subcommand("verify", "re-verify every stored record");
    verify_cmd->callback([&] {
        WitnessStore store(g.store_path);
        json out = json::array();
        bool all_ok = true;
        for (const auto& st : store.verify_all()) {
            out.push_back({{"word", st.record.word},
                           {"k", st.record.k},
                           {"verified", st.verified},
                           {"note", st.note}});
            all_ok = all_ok && st.verified;
        }
        emit(out);
        if (!all_ok) exit_code = 2;
    });
    store_cmd->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const budget_error& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
