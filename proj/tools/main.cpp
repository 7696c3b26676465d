// Command-line front end: build/serialize indexes, run locate and MEM
// queries, compute statistics, run the verification suites, and emit
// benchmark measurements.
//
// Output conventions: text positions and prefix lengths printed by locate and
// mems are 1-based end positions; serialized index files store 0-based
// positions as documented in the library headers.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sfx/index.hpp"
#include "sfx/verifiers.hpp"

using namespace sfx;

namespace {

struct input_flags {
    std::string path;
    bool fasta = false;
    std::string filter;  // "" or "dna"
};

text load_text(const input_flags& in) {
    std::string raw = load_raw(in.path, in.fasta);
    if (in.filter == "dna") {
        auto wl = dna_whitelist();
        return normalize(raw, &wl);
    }
    if (!in.filter.empty()) throw std::runtime_error("unknown --filter " + in.filter);
    return normalize(raw);
}

build_algo parse_algo(const std::string& name) {
    if (name == "quadratic") return build_algo::quadratic;
    if (name == "one-pass") return build_algo::one_pass;
    if (name == "linear-lf") return build_algo::linear_lf;
    if (name == "linear-fm") return build_algo::linear_fm;
    throw std::runtime_error("unknown --algorithm " + name);
}

std::string random_content(int64_t len, int sigma, std::mt19937_64& g) {
    std::uniform_int_distribution<int> d(0, sigma - 1);
    std::string s;
    s.reserve(len);
    for (int64_t i = 0; i < len; ++i) s.push_back(static_cast<char>('a' + d(g)));
    return s;
}

std::vector<std::string> load_patterns(const std::string& path, bool fasta) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::string> out;
    std::string line, current;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (fasta) {
            if (!line.empty() && line[0] == '>') {
                if (!current.empty()) out.push_back(std::move(current));
                current.clear();
            } else {
                current += line;
            }
        } else if (!line.empty()) {
            out.push_back(line);
        }
    }
    if (fasta && !current.empty()) out.push_back(std::move(current));
    return out;
}

sa_index load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return sa_index::load(in);
}

// runs fn(pattern_id) -> output chunk over worker threads, emitting in order
void fan_out(size_t count, int threads, const std::function<std::string(size_t)>& fn) {
    if (threads <= 1) {
        for (size_t i = 0; i < count; ++i) std::cout << fn(i);
        return;
    }
    std::vector<std::string> results(count);
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            try {
                for (size_t i = next++; i < count; i = next++) results[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next = count;
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    for (auto& r : results) std::cout << r;
}

int cmd_build(const input_flags& in, const std::string& out_path, const std::string& algo_name,
              const std::string& oracle_name, int k, int64_t rho0, double epsilon) {
    text t = load_text(in);
    index_build_options opt;
    opt.algo = parse_algo(algo_name);
    if (opt.algo == build_algo::quadratic && t.size() > 1000000)
        throw std::runtime_error("--algorithm quadratic is limited to n <= 1e6");
    if (oracle_name == "plain") opt.oracle = oracle_kind::plain;
    else if (oracle_name == "rlz") opt.oracle = oracle_kind::rlz;
    else throw std::runtime_error("unknown --oracle " + oracle_name);
    opt.k = k;
    opt.rlz = {rho0, epsilon};

    index_build_report rep;
    sa_index idx = build_index(t, opt, &rep);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    idx.serialize(out);

    std::cout << "n\t" << rep.n << "\n"
              << "sigma\t" << rep.sigma << "\n"
              << "chi\t" << rep.chi << "\n"
              << "bwt_runs\t" << rep.bwt_runs << "\n"
              << "build_seconds\t" << rep.build_seconds << "\n"
              << "sa_bytes\t" << rep.sa_bytes << "\n"
              << "seed_bytes\t" << rep.seed_bytes << "\n"
              << "oracle_bytes\t" << rep.oracle_bytes << " (" << oracle_name << ")\n";
    return 0;
}

std::string stats_line(size_t id, const query_stats& st) {
    std::ostringstream os;
    os << id << "\t#STATS\t" << st.search_calls << "\t" << st.binary_search_steps << "\t"
       << st.oracle_chars_read << "\t" << st.predecessor_lookups << "\n";
    return os.str();
}

int cmd_locate(const std::string& index_path, const std::string& patterns_path, bool fasta,
               bool prefixes, bool online_strict, bool no_seeds, bool with_stats, int threads) {
    sa_index idx = load_index(index_path);
    auto patterns = load_patterns(patterns_path, fasta);
    fan_out(patterns.size(), threads, [&](size_t id) {
        std::ostringstream os;
        query_stats st;
        auto codes = idx.map_pattern(patterns[id]);
        int64_t failed = idx.locate_one(
            codes,
            [&](int64_t i, int64_t j) {
                if (prefixes || i == static_cast<int64_t>(codes.size()))
                    os << id << "\t" << i << "\t" << j << "\n";
            },
            !online_strict, !no_seeds, &st);
        if (failed > 0) os << id << "\tNOT_FOUND\t" << failed << "\n";
        if (with_stats) os << stats_line(id, st);
        return os.str();
    });
    return 0;
}

int cmd_mems(const std::string& index_path, const std::string& patterns_path, bool fasta,
             bool no_seeds, bool with_stats, int threads) {
    sa_index idx = load_index(index_path);
    auto patterns = load_patterns(patterns_path, fasta);
    fan_out(patterns.size(), threads, [&](size_t id) {
        std::ostringstream os;
        query_stats st;
        auto codes = idx.map_pattern(patterns[id]);
        for (const auto& m : idx.find_mems(codes, !no_seeds, &st))
            os << id << "\t" << m.end_in_pattern << "\t" << m.end_in_text << "\t" << m.len
               << "\n";
        if (with_stats) os << stats_line(id, st);
        return os.str();
    });
    return 0;
}

int cmd_stats(const input_flags& in, const std::string& algo_name, bool permute) {
    text t = load_text(in);
    if (parse_algo(algo_name) == build_algo::quadratic && t.size() > 1000000)
        throw std::runtime_error("--algorithm quadratic is limited to n <= 1e6");
    auto chi_of = [&](const text& tt) {
        auto ss = suffix_structs::build(reverse_text(tt));
        auto set = run_suffixient_builder(parse_algo(algo_name), ss);
        return std::pair<int64_t, int64_t>(static_cast<int64_t>(set.size()), count_runs(ss.bwt));
    };
    auto [chi, runs] = chi_of(t);
    std::cout << "n\t" << t.size() << "\n"
              << "sigma\t" << t.sigma() << "\n"
              << "chi\t" << chi << "\n"
              << "bwt_runs\t" << runs << "\n";
    if (!permute) return 0;

    if (t.sigma() > 8) throw std::runtime_error("--permute-alphabet is limited to sigma <= 8");
    std::vector<uint8_t> perm(t.sigma());
    for (int c = 0; c < t.sigma(); ++c) perm[c] = static_cast<uint8_t>(c);
    int64_t min_runs = runs, max_runs = runs;
    bool chi_stable = true;
    int64_t orders = 0;
    do {
        ++orders;
        auto [pchi, pruns] = chi_of(permute_codes(t, perm));
        chi_stable = chi_stable && pchi == chi;
        min_runs = std::min(min_runs, pruns);
        max_runs = std::max(max_runs, pruns);
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    std::cout << "orderings\t" << orders << "\n"
              << "min_bwt_runs\t" << min_runs << "\n"
              << "max_bwt_runs\t" << max_runs << "\n"
              << "chi_order_independent\t" << (chi_stable ? "yes" : "no") << "\n"
              << "chi_le_2_min_runs\t" << (chi <= 2 * min_runs ? "yes" : "no") << "\n";
    return chi_stable && chi <= 2 * min_runs ? 0 : 1;
}

struct verify_state {
    int64_t checks = 0;
    bool ok = true;
    void fail(const std::string& what, const std::string& input) {
        ok = false;
        std::cout << "FAIL: " << what << "\n  input: " << input << "\n";
    }
};

void verify_one_text(const std::string& content, bool with_oracle, verify_state& vs) {
    text t = normalize(content);
    auto ss = suffix_structs::build(reverse_text(t));
    auto sv = build_sv(ss.lcp);
    std::vector<std::vector<int64_t>> sets = {build_quadratic(ss), build_one_pass(ss),
                                              build_linear_lf(ss), build_linear_fm(ss, sv)};
    int64_t runs = count_runs(ss.bwt);
    for (auto& s : sets) {
        ++vs.checks;
        if (s.size() != sets[0].size()) return vs.fail("builder cardinalities differ", content);
        if (static_cast<int64_t>(s.size()) < t.sigma()) return vs.fail("chi < sigma", content);
        if (static_cast<int64_t>(s.size()) > 2 * runs) return vs.fail("chi > 2 runs", content);
    }
    if (with_oracle) {
        int64_t chi = min_cardinality_oracle(t);
        std::string why;
        for (auto& s : sets) {
            ++vs.checks;
            if (static_cast<int64_t>(s.size()) != chi)
                return vs.fail("cardinality differs from the supermaximal count", content);
            if (!is_suffixient(t, s, &why)) return vs.fail("not suffixient: " + why, content);
        }
        if (t.size() <= 64) {
            for (auto& s : sets) {
                ++vs.checks;
                if (!is_attractor(t, s, &why)) return vs.fail("not an attractor: " + why, content);
            }
        }
    }
}

void verify_queries(const std::string& content, uint64_t seed, verify_state& vs) {
    text t = normalize(content);
    index_build_options opt;
    auto idx = build_index(t, opt, nullptr);
    std::mt19937_64 g(seed);
    int sigma = t.sigma() - 1;
    for (int q = 0; q < 200 && vs.ok; ++q) {
        int64_t len = 1 + static_cast<int64_t>(g() % 30);
        if (static_cast<int64_t>(content.size()) <= len) continue;
        int64_t at = g() % (content.size() - len);
        std::string pat = content.substr(at, len);
        if (q % 2)
            for (int muts = 0; muts < 1 + q % 3; ++muts)
                pat[g() % pat.size()] = static_cast<char>('a' + g() % (sigma + 1));
        auto codes = idx.map_pattern(pat);
        auto ms = naive_matching_stats(t, codes);

        query_stats st;
        std::vector<std::pair<int64_t, int64_t>> pairs;
        int64_t failed = idx.locate_one(
            codes, [&](int64_t i, int64_t j) { pairs.push_back({i, j}); }, q % 4 < 2, q % 2 == 0,
            &st);
        ++vs.checks;
        if (failed != naive_first_failing_prefix(ms))
            return vs.fail("locate: wrong first failing prefix", pat);
        for (auto [pi, pj] : pairs)
            for (int64_t d = 0; d < pi; ++d)
                if (t.data[pj - 1 - d] != codes[pi - 1 - d])
                    return vs.fail("locate: emitted pair fails extraction", pat);
        if (st.search_calls > pat.size()) return vs.fail("locate: too many searches", pat);

        auto mems = idx.find_mems(codes, q % 2 == 0, &st);
        std::vector<std::pair<int64_t, int64_t>> got;
        for (auto& m : mems) got.push_back({m.end_in_pattern, m.len});
        ++vs.checks;
        if (got != naive_mem_set(ms)) return vs.fail("mems differ from the naive set", pat);

        auto plain = idx.search(codes, &st);
        auto seeded = idx.search_seeded(codes, &st);
        ++vs.checks;
        if (plain.len != seeded.len) return vs.fail("seeded/plain search lengths differ", pat);
    }
}

int cmd_verify(int exhaustive_n, const std::string& alphabet, int random_texts, int64_t max_n,
               uint64_t seed) {
    verify_state vs;
    {
        std::string s;
        std::function<void(int64_t)> rec = [&](int64_t left) {
            if (!vs.ok) return;
            if (!s.empty()) verify_one_text(s, true, vs);
            if (left == 0) return;
            for (char c : alphabet) {
                s.push_back(c);
                rec(left - 1);
                s.pop_back();
            }
        };
        rec(exhaustive_n);
        std::cout << (vs.ok ? "PASS" : "FAIL") << ": exhaustive sweep, alphabet \"" << alphabet
                  << "\", lengths 1.." << exhaustive_n << "\n";
        if (!vs.ok) return 1;
    }
    std::mt19937_64 g(seed);
    for (int it = 0; it < random_texts && vs.ok; ++it) {
        int sigma = 2 + static_cast<int>(g() % 5);
        int64_t len = 1 + static_cast<int64_t>(g() % max_n);
        bool with_oracle = len <= 300;
        verify_one_text(random_content(len, sigma, g), with_oracle, vs);
    }
    std::cout << (vs.ok ? "PASS" : "FAIL") << ": randomized construction sweep, " << random_texts
              << " texts, n <= " << max_n << "\n";
    if (!vs.ok) return 1;
    for (int it = 0; it < 10 && vs.ok; ++it) {
        int sigma = 2 + static_cast<int>(g() % 5);
        verify_queries(random_content(500 + g() % 3000, sigma, g), g(), vs);
    }
    std::cout << (vs.ok ? "PASS" : "FAIL") << ": query differential sweep\n";
    std::cout << "checks\t" << vs.checks << "\n";
    return vs.ok ? 0 : 1;
}

struct bench_row {
    std::vector<double> ns_per_char;
    uint64_t search_calls = 0, steps = 0, patterns = 0;
};

void print_bench_row(const std::string& command, int64_t m, bench_row& row) {
    std::sort(row.ns_per_char.begin(), row.ns_per_char.end());
    double mean = std::accumulate(row.ns_per_char.begin(), row.ns_per_char.end(), 0.0) /
                  static_cast<double>(row.ns_per_char.size());
    double median = row.ns_per_char[row.ns_per_char.size() / 2];
    std::cout << command << "," << m << "," << row.patterns << "," << mean << "," << median << ","
              << static_cast<double>(row.search_calls) / static_cast<double>(row.patterns) << ","
              << static_cast<double>(row.steps) / static_cast<double>(row.patterns) << "\n";
}

int cmd_bench(const std::string& index_path, const input_flags& corpus_in,
              std::vector<int64_t> lengths, int64_t pattern_count, uint64_t seed) {
    sa_index idx = load_index(index_path);
    text corpus = load_text(corpus_in);
    std::cout << "command,m,patterns,mean_ns_per_char,median_ns_per_char,search_calls_mean,"
                 "steps_mean\n";
    for (int64_t m : lengths) {
        if (corpus.size() - 1 < m) throw std::runtime_error("corpus shorter than pattern length");
        std::mt19937_64 g(seed);
        std::vector<std::vector<int16_t>> pats(pattern_count);
        std::uniform_int_distribution<int64_t> pos(0, corpus.size() - 1 - m);
        for (auto& p : pats) {
            int64_t at = pos(g);
            p.assign(corpus.data.begin() + at, corpus.data.begin() + at + m);
        }
        auto run = [&](const std::string& name, bool mems, bool seeds) {
            bench_row row;
            row.patterns = pats.size();
            query_stats st;
            for (auto& p : pats) {
                auto t0 = std::chrono::steady_clock::now();
                if (mems) {
                    auto r = idx.find_mems(p, seeds, &st);
                    (void)r;
                } else {
                    idx.locate_one(
                        p, [](int64_t, int64_t) {}, true, seeds, &st);
                }
                double ns =
                    std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - t0)
                        .count();
                row.ns_per_char.push_back(ns / static_cast<double>(m));
            }
            row.search_calls = st.search_calls;
            row.steps = st.binary_search_steps;
            print_bench_row(name, m, row);
        };
        run("locate", false, false);
        if (idx.has_seeds()) run("locate+seeds", false, true);
        run("mems", true, false);
        if (idx.has_seeds()) run("mems+seeds", true, true);

        // raw memory throughput: copy length-m blocks from random positions
        {
            bench_row row;
            row.patterns = static_cast<uint64_t>(pattern_count);
            std::vector<uint8_t> buf(m);
            std::mt19937_64 g2(seed + 1);
            std::uniform_int_distribution<int64_t> pos2(0, corpus.size() - 1 - m);
            volatile uint8_t sink = 0;
            for (int64_t r = 0; r < pattern_count; ++r) {
                int64_t at = pos2(g2);
                auto t0 = std::chrono::steady_clock::now();
                std::copy(corpus.data.begin() + at, corpus.data.begin() + at + m, buf.begin());
                sink = sink ^ buf[0] ^ buf[m - 1];
                double ns =
                    std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - t0)
                        .count();
                row.ns_per_char.push_back(ns / static_cast<double>(m));
            }
            (void)sink;
            print_bench_row("baseline", m, row);
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"suffixient array construction and pattern matching"};
    app.require_subcommand(1);

    input_flags in;
    std::string out_path, index_path, patterns_path, algo = "linear-fm", oracle = "plain";
    int k = -1;
    int64_t rho0 = int64_t(1) << 20;
    double epsilon = 0.5;
    bool fasta_patterns = false, prefixes = false, online_strict = false, no_seeds = false;
    bool with_stats = false, permute = false;
    int threads = 1;
    int exhaustive_n = 10;
    std::string alphabet = "ab";
    int random_texts = 150;
    int64_t max_n = 2000;
    uint64_t seed = 0;
    std::vector<int64_t> bench_m = {10, 100, 1000};
    int64_t bench_patterns = 10000;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("--input", in.path, "input text file")->required();
        cmd->add_flag("--fasta", in.fasta, "input is FASTA");
        cmd->add_option("--filter", in.filter, "symbol whitelist (dna)");
    };

    auto* b = app.add_subcommand("build", "build and serialize an index");
    add_input(b);
    b->add_option("--output", out_path, "index file to write")->required();
    b->add_option("--algorithm", algo, "quadratic|one-pass|linear-lf|linear-fm");
    b->add_option("--oracle", oracle, "plain|rlz");
    b->add_option("--k", k, "seed length (0 disables the seed table)");
    b->add_option("--rho0", rho0, "first rlz reference candidate length");
    b->add_option("--epsilon", epsilon, "rlz candidate growth factor minus one");

    auto* l = app.add_subcommand("locate", "one occurrence per pattern (prefix)");
    l->add_option("--index", index_path, "index file")->required();
    l->add_option("--patterns", patterns_path, "pattern file, one per line")->required();
    l->add_flag("--fasta", fasta_patterns, "patterns are FASTA records");
    l->add_flag("--prefixes", prefixes, "report every prefix, not just the full pattern");
    l->add_flag("--online-strict", online_strict, "disable the seeded start");
    l->add_flag("--no-seeds", no_seeds, "ignore the seed table");
    l->add_flag("--stats", with_stats, "append per-pattern query statistics");
    l->add_option("--threads", threads, "worker threads");

    auto* mm = app.add_subcommand("mems", "all maximal exact matches per pattern");
    mm->add_option("--index", index_path, "index file")->required();
    mm->add_option("--patterns", patterns_path, "pattern file, one per line")->required();
    mm->add_flag("--fasta", fasta_patterns, "patterns are FASTA records");
    mm->add_flag("--no-seeds", no_seeds, "ignore the seed table");
    mm->add_flag("--stats", with_stats, "append per-pattern query statistics");
    mm->add_option("--threads", threads, "worker threads");

    auto* s = app.add_subcommand("stats", "text statistics: n, sigma, chi, BWT runs");
    add_input(s);
    s->add_option("--algorithm", algo, "construction algorithm for chi");
    s->add_flag("--permute-alphabet", permute, "sweep all non-sentinel code orders");

    auto* v = app.add_subcommand("verify", "run the property suites");
    v->add_option("--exhaustive-n", exhaustive_n, "exhaustive sweep length bound");
    v->add_option("--alphabet", alphabet, "exhaustive sweep alphabet");
    v->add_option("--random", random_texts, "number of random texts");
    v->add_option("--max-n", max_n, "random text length bound");
    v->add_option("--seed", seed, "random seed");

    auto* be = app.add_subcommand("bench", "benchmark locate and mems");
    be->add_option("--index", index_path, "index file")->required();
    add_input(be);
    be->add_option("--m", bench_m, "pattern lengths");
    be->add_option("--patterns", bench_patterns, "patterns per length");
    be->add_option("--seed", seed, "random seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (b->parsed()) return cmd_build(in, out_path, algo, oracle, k, rho0, epsilon);
        if (l->parsed())
            return cmd_locate(index_path, patterns_path, fasta_patterns, prefixes, online_strict,
                              no_seeds, with_stats, threads);
        if (mm->parsed())
            return cmd_mems(index_path, patterns_path, fasta_patterns, no_seeds, with_stats,
                            threads);
        if (s->parsed()) return cmd_stats(in, algo, permute);
        if (v->parsed()) return cmd_verify(exhaustive_n, alphabet, random_texts, max_n, seed);
        if (be->parsed()) return cmd_bench(index_path, in, bench_m, bench_patterns, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
