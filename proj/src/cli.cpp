#include "ocspath/cli.hpp"

#include <array>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <iomanip>
#include <istream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "ocspath/generators.hpp"
#include "ocspath/io.hpp"
#include "ocspath/normalize.hpp"
#include "ocspath/oca.hpp"
#include "ocspath/reach.hpp"
#include "ocspath/zocs.hpp"

namespace ocspath {

namespace {

using json = nlohmann::ordered_json;

SystemDocument load_system(const std::string& file, std::istream& in) {
    if (file == "-") return parse_system(in);
    std::ifstream f(file);
    if (!f) throw io_error("cannot open file \"" + file + "\"");
    return parse_system(f);
}

std::optional<State> state_of(const SystemDocument& doc, const std::string& name) {
    return std::visit(
        [&](const auto& sys) {
            if constexpr (std::is_same_v<std::decay_t<decltype(sys)>, Oca>)
                return sys.ocs.state_by_name(name);
            else
                return sys.state_by_name(name);
        },
        doc);
}

Config parse_endpoint(const SystemDocument& doc, const std::string& text, const char* which) {
    std::size_t colon = text.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == text.size())
        throw io_error(std::string(which) + " must look like STATE:COUNTER");
    std::string name = text.substr(0, colon);
    std::string num = text.substr(colon + 1);
    std::int64_t counter = 0;
    auto [end, ec] = std::from_chars(num.data(), num.data() + num.size(), counter);
    if (ec != std::errc{} || end != num.data() + num.size())
        throw io_error(std::string(which) + ": counter \"" + num + "\" is not an integer");
    std::optional<State> q = state_of(doc, name);
    if (!q) throw io_error(std::string(which) + ": unknown state \"" + name + "\"");
    return Config{*q, counter};
}

int cmd_reach(const SystemDocument& doc, const std::string& from, const std::string& to,
              const std::string& minimize, std::ostream& out, std::ostream& err) {
    const Ocs* o = std::get_if<Ocs>(&doc);
    if (const Oca* a = std::get_if<Oca>(&doc)) o = &a->ocs;
    if (o == nullptr) throw io_error("reach needs kind \"ocs\" or \"oca\"; use zreach");
    Config alpha = parse_endpoint(doc, from, "--from");
    Config beta = parse_endpoint(doc, to, "--to");
    std::optional<Path> rho = minimize == "zeros" ? min_zero_path(*o, alpha, beta)
                                                  : shortest_path(*o, alpha, beta);
    if (!rho) {
        err << "unreachable\n";
        return exit_unreachable;
    }
    out << serialize_path(doc, *rho);
    return exit_ok;
}

int cmd_normalize(const SystemDocument& doc, const std::string& from, const std::string& to,
                  std::ostream& out, std::ostream& err) {
    const Ocs* o = std::get_if<Ocs>(&doc);
    if (o == nullptr) throw io_error("normalize needs kind \"ocs\"");
    Config alpha = parse_endpoint(doc, from, "--from");
    Config beta = parse_endpoint(doc, to, "--to");
    SccAnalysis analysis = analyze(*o);
    std::optional<NormalizedPath> np = normalize_path_detailed(*o, analysis, alpha, beta);
    if (!np) {
        err << "unreachable\n";
        return exit_unreachable;
    }
    json report;
    report["path"] = json::parse(serialize_path(doc, np->path));
    json arcs = json::array();
    for (const NormalizedArc& na : np->arcs) {
        json rec;
        if (!na.decomposition) {
            rec["form"] = "low";
            rec["length"] = na.arc.length();
        } else {
            const NormalDecomposition& d = *na.decomposition;
            rec["form"] = "normal";
            rec["length"] = na.arc.length();
            rec["pref_length"] = d.pref.length();
            rec["up_repeats"] = d.up_repeats;
            rec["up_cycle_effect"] = d.up_cycle_effect;
            rec["cap_length"] = d.cap_length;
            rec["down_repeats"] = d.down_repeats;
            rec["down_cycle_effect"] = d.down_cycle_effect;
            rec["suff_length"] = d.suff.length();
            rec["residual_effect"] = d.residual_effect;
            rec["scc_up"] = d.scc_up;
            rec["scc_down"] = d.scc_down;
        }
        arcs.push_back(std::move(rec));
    }
    report["arcs"] = std::move(arcs);
    out << report.dump(2) << "\n";
    return exit_ok;
}

int cmd_shortest_word(const SystemDocument& doc, std::ostream& out, std::ostream& err) {
    const Oca* a = std::get_if<Oca>(&doc);
    if (a == nullptr) throw io_error("shortest-word needs kind \"oca\"");
    std::optional<std::vector<std::string>> word = shortest_word(*a);
    if (!word) {
        err << "empty language\n";
        return exit_unreachable;
    }
    json result;
    result["word"] = *word;
    result["length"] = word->size();
    out << result.dump(2) << "\n";
    return exit_ok;
}

int cmd_zreach(const SystemDocument& doc, const std::string& from, const std::string& to,
               std::ostream& out, std::ostream& err) {
    const ZOcs* z = std::get_if<ZOcs>(&doc);
    if (z == nullptr) throw io_error("zreach needs kind \"zocs\"");
    Config alpha = parse_endpoint(doc, from, "--from");
    Config beta = parse_endpoint(doc, to, "--to");
    std::optional<Path> rho = z_shortest_path(*z, alpha, beta);
    if (!rho) {
        err << "unreachable\n";
        return exit_unreachable;
    }
    out << serialize_path(doc, *rho);
    return exit_ok;
}

struct SweepResult {
    std::uint64_t queries = 0;
    std::uint64_t reachable = 0;
    std::array<std::uint64_t, 14> histogram{};
    double max_ratio = -1.0;
    std::int64_t max_length = 0;
    int max_n = 0;
    int max_trial = -1;

    void take_max(double ratio, std::int64_t length, int n, int trial) {
        if (ratio > max_ratio || (ratio == max_ratio && trial < max_trial)) {
            max_ratio = ratio;
            max_length = length;
            max_n = n;
            max_trial = trial;
        }
    }

    void merge(const SweepResult& other) {
        queries += other.queries;
        reachable += other.reachable;
        for (std::size_t i = 0; i < histogram.size(); ++i) histogram[i] += other.histogram[i];
        if (other.max_trial >= 0)
            take_max(other.max_ratio, other.max_length, other.max_n, other.max_trial);
    }
};

void run_trial(int trial, int n_max, std::uint64_t seed, SweepResult& acc) {
    constexpr double kDensities[] = {0.1, 0.3, 0.6};
    const int n = 2 + trial % (n_max - 1);
    const double density = kDensities[(trial / (n_max - 1)) % 3];
    const std::uint64_t trial_seed = splitmix64(splitmix64(seed) ^ (trial + 1));
    Ocs sys = random_ocs(n, density, density, trial_seed);

    // Zero-to-zero pairs carry the quadratic bound; the search itself asserts
    // it, the sweep records the observed ratios.
    for (State p = 0; p < n; ++p)
        for (State q = 0; q < n; ++q) {
            acc.queries += 1;
            std::optional<Path> rho = shortest_path(sys, {p, 0}, {q, 0});
            if (!rho) continue;
            acc.reachable += 1;
            std::int64_t len = static_cast<std::int64_t>(rho->length());
            double ratio = static_cast<double>(len) / (static_cast<double>(n) * n);
            std::size_t bucket = std::min<std::size_t>(13, static_cast<std::size_t>(ratio));
            acc.histogram[bucket] += 1;
            acc.take_max(ratio, len, n, trial);
        }

    // One query with nonzero endpoint counters exercises the extended bound,
    // asserted inside the search.
    Config alpha{static_cast<State>(trial_seed % n),
                 static_cast<std::int64_t>((trial_seed >> 16) % 7)};
    Config beta{static_cast<State>((trial_seed >> 8) % n),
                static_cast<std::int64_t>((trial_seed >> 24) % 7)};
    acc.queries += 1;
    if (shortest_path(sys, alpha, beta)) acc.reachable += 1;
}

int cmd_verify(int n_max, int trials, std::uint64_t seed, int threads, std::ostream& out) {
    SweepResult total;
    std::mutex merge_mutex;
    std::atomic<int> next{0};
    std::exception_ptr failure;
    auto worker = [&]() {
        SweepResult local;
        try {
            for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1))
                run_trial(t, n_max, seed, local);
        } catch (...) {
            std::scoped_lock lock(merge_mutex);
            if (!failure) failure = std::current_exception();
            next.store(trials);  // stop the other workers
            return;
        }
        std::scoped_lock lock(merge_mutex);
        total.merge(local);
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    out << "trials: " << trials << "\n";
    out << "queries: " << total.queries << "\n";
    out << "reachable: " << total.reachable << "\n";
    std::ostringstream ratio;
    ratio << std::fixed << std::setprecision(4) << (total.max_trial >= 0 ? total.max_ratio : 0.0);
    out << "max length/n^2: " << ratio.str();
    if (total.max_trial >= 0)
        out << " (length " << total.max_length << ", n " << total.max_n << ", trial "
            << total.max_trial << ")";
    out << "\n";
    out << "histogram of length/n^2:\n";
    for (std::size_t b = 0; b < total.histogram.size(); ++b) {
        out << "  [" << std::setw(2) << b << "," << std::setw(2) << b + 1
            << (b + 1 == total.histogram.size() ? "]" : ")") << " " << total.histogram[b]
            << "\n";
    }
    return exit_ok;
}

int run_impl(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
             std::ostream& err) {
    CLI::App app{"exact shortest paths and normal forms in one-counter systems"};
    app.name("ocspath");
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "emit a generated system document");
    gen->require_subcommand(1);
    int e1_n = 2;
    auto* gen_e1 = gen->add_subcommand("example1", "two-phase family with quadratic diameter");
    gen_e1->add_option("--n", e1_n, "half the state count")->required()->check(CLI::Range(2, 100000));
    int e2_k = 2, e2_m = 3;
    auto* gen_e2 = gen->add_subcommand("example2", "coprime cycle family forced to climb");
    gen_e2->add_option("--k", e2_k, "first cycle length")->required()->check(CLI::Range(2, 100000));
    gen_e2->add_option("--m", e2_m, "second cycle length")->required()->check(CLI::Range(2, 100000));
    int e3_n = 2;
    std::int64_t e3_ca = 0, e3_cb = 0;
    auto* gen_e3 = gen->add_subcommand("example3", "family with costly nonzero endpoints");
    gen_e3->add_option("--n", e3_n, "size parameter")->required()->check(CLI::Range(2, 100000));
    gen_e3->add_option("--c-alpha", e3_ca, "source counter")->check(CLI::Range(std::int64_t{0}, std::int64_t{1} << 40));
    gen_e3->add_option("--c-beta", e3_cb, "target counter")->check(CLI::Range(std::int64_t{0}, std::int64_t{1} << 40));
    std::string rnd_kind = "ocs";
    int rnd_n = 4, rnd_alphabet = 2;
    double rnd_pos = 0.3, rnd_zero = 0.3, rnd_neg = 0.3, rnd_eps = 0.2;
    std::uint64_t rnd_seed = 0;
    auto* gen_rnd = gen->add_subcommand("random", "seeded random system");
    gen_rnd->add_option("--kind", rnd_kind, "ocs, oca or zocs")
        ->check(CLI::IsMember({"ocs", "oca", "zocs"}));
    gen_rnd->add_option("--n", rnd_n, "state count")->required()->check(CLI::Range(1, 100000));
    gen_rnd->add_option("--pos-density", rnd_pos, "positive-guard transition density")
        ->check(CLI::Range(0.0, 1.0));
    gen_rnd->add_option("--zero-density", rnd_zero, "zero-test density")
        ->check(CLI::Range(0.0, 1.0));
    gen_rnd->add_option("--neg-density", rnd_neg, "negative-guard density (zocs)")
        ->check(CLI::Range(0.0, 1.0));
    gen_rnd->add_option("--alphabet-size", rnd_alphabet, "letter count (oca)")
        ->check(CLI::Range(0, 1000));
    gen_rnd->add_option("--epsilon-prob", rnd_eps, "unlabeled transition probability (oca)")
        ->check(CLI::Range(0.0, 1.0));
    gen_rnd->add_option("--seed", rnd_seed, "generator seed")->required();

    std::string reach_file, reach_from, reach_to, reach_minimize = "length";
    auto* reach = app.add_subcommand("reach", "shortest path between two configurations");
    reach->add_option("file", reach_file, "system document, - for stdin")->required();
    reach->add_option("--from", reach_from, "source STATE:COUNTER")->required();
    reach->add_option("--to", reach_to, "target STATE:COUNTER")->required();
    reach->add_option("--minimize", reach_minimize, "length or zeros")
        ->check(CLI::IsMember({"length", "zeros"}));

    std::string norm_file, norm_from, norm_to;
    auto* norm = app.add_subcommand("normalize", "normalized zero-to-zero witness");
    norm->add_option("file", norm_file, "system document, - for stdin")->required();
    norm->add_option("--from", norm_from, "source STATE:COUNTER")->required();
    norm->add_option("--to", norm_to, "target STATE:COUNTER")->required();

    std::string word_file;
    auto* word = app.add_subcommand("shortest-word", "shortest accepted word of an automaton");
    word->add_option("file", word_file, "automaton document, - for stdin")->required();

    std::string z_file, z_from, z_to;
    auto* zreach = app.add_subcommand("zreach", "shortest path over integer counters");
    zreach->add_option("file", z_file, "system document, - for stdin")->required();
    zreach->add_option("--from", z_from, "source STATE:COUNTER")->required();
    zreach->add_option("--to", z_to, "target STATE:COUNTER")->required();

    int v_nmax = 8, v_trials = 100, v_threads = 1;
    std::uint64_t v_seed = 0;
    auto* verify = app.add_subcommand("verify", "sweep random systems and assert the bounds");
    verify->add_option("--n-max", v_nmax, "largest state count")->check(CLI::Range(2, 64));
    verify->add_option("--trials", v_trials, "number of random systems")
        ->check(CLI::Range(1, 100000000));
    verify->add_option("--seed", v_seed, "sweep seed")->required();
    verify->add_option("--threads", v_threads, "worker threads")->check(CLI::Range(1, 256));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }

    if (gen->parsed()) {
        if (gen_e1->parsed()) {
            out << serialize(example1(e1_n).ocs);
        } else if (gen_e2->parsed()) {
            out << serialize(example2(e2_k, e2_m).ocs);
        } else if (gen_e3->parsed()) {
            out << serialize(example3(e3_n, e3_ca, e3_cb).ocs);
        } else if (rnd_kind == "ocs") {
            out << serialize(random_ocs(rnd_n, rnd_pos, rnd_zero, rnd_seed));
        } else if (rnd_kind == "oca") {
            out << serialize(
                random_oca(rnd_n, rnd_pos, rnd_zero, rnd_alphabet, rnd_eps, rnd_seed));
        } else {
            out << serialize(random_zocs(rnd_n, rnd_pos, rnd_neg, rnd_zero, rnd_seed));
        }
        return exit_ok;
    }
    if (reach->parsed())
        return cmd_reach(load_system(reach_file, in), reach_from, reach_to, reach_minimize,
                         out, err);
    if (norm->parsed())
        return cmd_normalize(load_system(norm_file, in), norm_from, norm_to, out, err);
    if (word->parsed()) return cmd_shortest_word(load_system(word_file, in), out, err);
    if (zreach->parsed())
        return cmd_zreach(load_system(z_file, in), z_from, z_to, out, err);
    if (verify->parsed()) return cmd_verify(v_nmax, v_trials, v_seed, v_threads, out);
    return exit_input_error;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    try {
        return run_impl(args, in, out, err);
    } catch (const internal_error& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal_error;
    } catch (const not_fireable_error& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal_error;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal_error;
    }
}

}  // namespace ocspath
