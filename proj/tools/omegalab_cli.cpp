// omegalab: command-line front end for the codecs, Kraft sums, flow
// diagnostics, mixed-law checks and quantization reports.
//
// Exit codes: 0 success, 1 usage error, 2 data or validation error.

#include <CLI11.hpp>
#include <json.hpp>

#include <omegalab/omegalab.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace omegalab;

constexpr int kUsage = 1;
constexpr int kData = 2;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
    return buf;
}

/// Rows rendered either as whitespace-aligned text or CSV.
class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    void print(std::ostream& out, bool csv) const {
        if (csv) {
            print_csv_row(out, header_);
            for (const auto& r : rows_) print_csv_row(out, r);
            return;
        }
        std::vector<std::size_t> width(header_.size(), 0);
        auto widen = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
        };
        widen(header_);
        for (const auto& r : rows_) widen(r);
        auto line = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                out << r[i];
                if (i + 1 < r.size()) out << std::string(width[i] - r[i].size() + 2, ' ');
            }
            out << '\n';
        };
        line(header_);
        for (const auto& r : rows_) line(r);
    }

private:
    static void print_csv_row(std::ostream& out, const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
        out << '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    if (path.empty() || path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_text(const std::string& path) {
    const auto bytes = read_bytes(path);
    return {bytes.begin(), bytes.end()};
}

nlohmann::json read_json(const std::string& path) {
    try {
        return nlohmann::json::parse(read_text(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    if (path.empty() || path == "-") {
        std::cout.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<PosInt> parse_integer_lines(const std::string& text) {
    std::vector<PosInt> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }),
                   line.end());
        if (line.empty()) continue;
        try {
            out.push_back(parse_positive(line));
        } catch (const FormatError& e) {
            throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

/// Parses "lo:hi:n" (log-spaced) or a single number.
std::vector<double> parse_x_spec(const std::string& spec) {
    const auto first = spec.find(':');
    auto num = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--x", "not a number: " + s);
        }
        if (used != s.size()) throw CLI::ValidationError("--x", "not a number: " + s);
        return v;
    };
    if (first == std::string::npos) return {num(spec)};
    const auto second = spec.find(':', first + 1);
    if (second == std::string::npos) throw CLI::ValidationError("--x", "range needs lo:hi:points");
    const double lo = num(spec.substr(0, first));
    const double hi = num(spec.substr(first + 1, second - first - 1));
    const double n = num(spec.substr(second + 1));
    if (!(n >= 1) || n != std::floor(n)) throw CLI::ValidationError("--x", "points must be a positive integer");
    return log_grid(lo, hi, static_cast<std::size_t>(n));
}

CodelengthFn parse_init(const std::string& init) {
    if (init == "zero") return CodelengthFn::zero();
    if (init.rfind("const:", 0) == 0) {
        const std::string v = init.substr(6);
        std::size_t used = 0;
        double c = 0;
        try {
            c = std::stod(v, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != v.size()) throw CLI::ValidationError("--init", "const:C needs a number");
        return CodelengthFn::constant(c);
    }
    throw CLI::ValidationError("--init", "expected zero or const:C");
}

template <typename Job>
std::vector<std::vector<std::string>> run_parallel(std::size_t count, unsigned threads, Job job) {
    std::vector<std::vector<std::string>> rows(count);
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::vector<std::string> errors(threads);
    auto work = [&](unsigned t) {
        try {
            for (std::size_t i = t; i < count; i += threads) rows[i] = job(i);
        } catch (const std::exception& e) {
            errors[t] = e.what();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    for (const auto& e : errors) {
        if (!e.empty()) throw Error(e);
    }
    return rows;
}

struct Options {
    // shared
    std::string output = "text";
    std::string code = "omega";
    std::string in;
    std::string out;
    unsigned threads = 1;
    // encode
    std::string format = "container";
    // len
    std::vector<std::string> numbers;
    std::string units = "bits";
    bool chain = false;
    // kraft
    std::uint64_t max_beta = 0;
    unsigned digits = 10;
    std::uint64_t brute = 0;
    // flow
    std::vector<std::string> xs;
    std::string init = "zero";
    int iters = -1;
    std::string report = "value";
    // law / quantize
    std::string law_file;
    std::string quant_file;
    unsigned boltzmann_base = 0;
    bool partial = false;
    // suite
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t instances = 200;
};

int cmd_encode(const Options& o) {
    const Code code = parse_code(o.code);
    const auto values = parse_integer_lines(read_text(o.in));
    const BitString bits = encode_stream<PosInt>(code, values);
    if (o.format == "text") {
        const std::string s = bits.to_string() + "\n";
        write_bytes(o.out, {s.begin(), s.end()});
    } else {
        write_bytes(o.out, write_container(code, bits));
    }
    return 0;
}

int cmd_decode(const Options& o, bool code_given) {
    const auto bytes = read_bytes(o.in);
    Container c;
    if (has_container_magic(bytes)) {
        c = read_container(bytes);
        if (code_given && parse_code(o.code) != c.code) {
            throw FormatError("container holds " + to_string(c.code) + " but --code " + o.code + " was given");
        }
    } else {
        std::string text(bytes.begin(), bytes.end());
        text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char ch) { return std::isspace(ch); }),
                   text.end());
        c.code = parse_code(o.code);
        c.bits = BitString::from_string(text);
    }
    const auto values = decode_stream<PosInt>(c.code, c.bits);
    if (o.output == "csv") std::cout << "value\n";
    for (const auto& v : values) std::cout << v << '\n';
    return 0;
}

int cmd_len(const Options& o) {
    const Code code = parse_code(o.code);
    const bool csv = o.output == "csv";
    if (csv) std::cout << "n,length" << (o.chain ? ",chain" : "") << '\n';
    for (const auto& text : o.numbers) {
        const PosInt n = parse_positive(text);
        const auto bits = codelength(code, n);
        const std::string len = o.units == "nats" ? fmt(static_cast<double>(bits) * std::log(2.0)) : std::to_string(bits);
        std::string chain;
        if (o.chain) {
            for (const auto& v : omega_chain(n)) chain += (chain.empty() ? "" : " ") + v.str();
        }
        if (csv) {
            std::cout << n << ',' << len << (o.chain ? "," + chain : "") << '\n';
        } else {
            std::cout << len << (o.chain ? "  chain: " + chain : "") << '\n';
        }
    }
    return 0;
}

int cmd_kraft(const Options& o) {
    const Code code = parse_code(o.code);
    KraftOptions ko;
    ko.threads = std::max(1U, o.threads);
    const Dyadic sum = partial_sum_beta_le(o.max_beta, code, ko);
    const Dyadic gap = Dyadic(PosInt(1), 0) - sum;
    std::vector<std::pair<std::string, std::string>> rows{
        {"code", to_string(code)},
        {"max_beta", std::to_string(o.max_beta)},
        {"partial_sum", sum.to_exact_string()},
        {"decimal", sum.to_decimal(o.digits)},
        {"gap", gap.to_exact_string()},
        {"gap_decimal", gap.to_decimal(o.digits)},
    };
    if (o.brute > 0) {
        const Dyadic brute = brute_partial_sum(o.brute, code, ko);
        rows.emplace_back("brute_n", std::to_string(o.brute));
        rows.emplace_back("brute_sum", brute.to_exact_string());
        rows.emplace_back("brute_decimal", brute.to_decimal(o.digits));
        if (o.max_beta < 64 && o.brute == (std::uint64_t{1} << o.max_beta) - 1) {
            rows.emplace_back("brute_matches", brute == sum ? "yes" : "no");
        }
    }
    if (o.output == "csv") {
        for (std::size_t i = 0; i < rows.size(); ++i) std::cout << (i ? "," : "") << rows[i].first;
        std::cout << '\n';
        for (std::size_t i = 0; i < rows.size(); ++i) std::cout << (i ? "," : "") << rows[i].second;
        std::cout << '\n';
    } else {
        for (const auto& [k, v] : rows) std::cout << k << " = " << v << '\n';
    }
    return 0;
}

int cmd_flow(const Options& o) {
    const CodelengthFn f0 = parse_init(o.init);
    std::vector<double> xs;
    for (const auto& spec : o.xs) {
        const auto part = parse_x_spec(spec);
        xs.insert(xs.end(), part.begin(), part.end());
    }
    Table table(o.report == "value"  ? std::vector<std::string>{"x", "iters", "flow", "ell_star"}
                : o.report == "gap"  ? std::vector<std::string>{"x", "depth", "tail", "gap"}
                                     : std::vector<std::string>{"x", "depth", "chain"});
    for (double x : xs) {
        const LogChain chain = log_chain(x);
        if (o.report == "value") {
            const unsigned m = o.iters < 0 ? static_cast<unsigned>(chain.depth()) : static_cast<unsigned>(o.iters);
            table.add({fmt(x), std::to_string(m), fmt(flow(f0, x, m)), fmt(ell_star(x))});
        } else if (o.report == "gap") {
            table.add({fmt(x), std::to_string(chain.depth()), fmt(chain.tail()), fmt(convergence_gap(f0, x))});
        } else {
            std::string entries;
            for (double e : chain.entries) entries += (entries.empty() ? "" : " ") + fmt(e);
            table.add({fmt(x), std::to_string(chain.depth()), entries});
        }
    }
    table.print(std::cout, o.output == "csv");
    return 0;
}

int cmd_law(const Options& o) {
    const auto doc = read_json(o.law_file);
    const MixedLaw law = parse_law(doc);
    const std::vector<std::pair<std::string, std::string>> rows{
        {"status", "ok"},
        {"atoms", std::to_string(law.atoms().size())},
        {"segments", std::to_string(law.segments().size())},
        {"atom_mass", fmt(law.atom_mass())},
        {"density_mass", fmt(law.density_mass())},
        {"entropy", fmt(entropy(law))},
    };
    if (o.output == "csv") {
        for (std::size_t i = 0; i < rows.size(); ++i) std::cout << (i ? "," : "") << rows[i].first;
        std::cout << '\n';
        for (std::size_t i = 0; i < rows.size(); ++i) std::cout << (i ? "," : "") << rows[i].second;
        std::cout << '\n';
    } else {
        for (const auto& [k, v] : rows) std::cout << k << " = " << v << '\n';
    }
    return 0;
}

std::vector<std::pair<std::string, std::string>> report_rows(const DecompositionReport& r) {
    return {
        {"avg_len", fmt(r.avg_len)},
        {"kraft", fmt(r.kraft)},
        {"H_pi", fmt(r.H_pi)},
        {"KL_pi_q", fmt(r.KL_pi_q)},
        {"logK_slack", fmt(r.logK_slack)},
        {"coverage", fmt(r.coverage)},
        {"full_coverage", r.full_coverage ? "true" : "false"},
        {"H_p", fmt(r.H_p)},
        {"vol_term", fmt(r.vol_term)},
        {"KL_rho_rhobar", fmt(r.KL_rho_rhobar)},
        {"V_Q", fmt(r.V_Q)},
        {"heisenberg_lhs", fmt(r.heisenberg_lhs)},
        {"heisenberg_rhs", fmt(r.heisenberg_rhs)},
        {"V", fmt(r.V)},
        {"boltzmann_W", fmt(r.boltzmann_W)},
        {"display_base", std::to_string(r.display_base)},
        {"k_D", fmt(r.k_D)},
        {"identity_a_residual", fmt(r.identity_a_residual())},
        {"identity_b_residual", r.full_coverage ? fmt(r.identity_b_residual()) : "n/a"},
    };
}

int cmd_quantize(const Options& o) {
    const auto law_doc = read_json(o.law_file);
    const MixedLaw law = parse_law(law_doc);
    nlohmann::json quant_doc = o.quant_file.empty() ? law_doc : read_json(o.quant_file);
    if (!has_quantization(quant_doc)) throw InvalidInput("cells", "no quantization given (use --quant or add cells)");
    const Quantization q = parse_quantization(quant_doc);
    const auto lens = parse_lengths(quant_doc.contains("lengths") ? quant_doc : law_doc, law);
    ReportOptions ro;
    ro.display_base = o.boltzmann_base == 0 ? 2 : o.boltzmann_base;
    ro.require_full_coverage = !o.partial;
    const auto report = decomposition_report(law, lens, q, ro);
    auto rows = report_rows(report);
    if (o.boltzmann_base != 0) {
        const auto b = boltzmann_check(report, o.boltzmann_base);
        rows.emplace_back("lbar_star", fmt(b.lbar_star));
        rows.emplace_back("kD_lnW", fmt(b.kD_lnW));
        rows.emplace_back("boltzmann_gap", fmt(b.gap));
    }
    if (o.output == "csv") {
        for (std::size_t i = 0; i < rows.size(); ++i) std::cout << (i ? "," : "") << rows[i].first;
        std::cout << '\n';
        for (std::size_t i = 0; i < rows.size(); ++i) std::cout << (i ? "," : "") << rows[i].second;
        std::cout << '\n';
    } else {
        for (const auto& [k, v] : rows) std::cout << k << " = " << v << '\n';
    }
    return 0;
}

std::vector<std::string> identities_row(std::uint64_t seed, std::size_t i) {
    Rng rng(instance_seed(seed, i));
    const MixedLaw law = random_law(rng, {.allow_grid = true});
    const auto implied = shannon_identity_report(law, implied_lengths(law));
    const auto lens = random_feasible_lengths(law, rng);
    const auto shannon = shannon_identity_report(law, lens);
    const Quantization q = random_full_partition(law, rng);
    const auto report = decomposition_report(law, lens, q);
    return {std::to_string(i),
            std::to_string(law.atoms().size()),
            std::to_string(law.segments().size()),
            std::to_string(q.cells.size()),
            fmt(implied.kraft - 1.0),
            fmt(implied.expected_length - implied.entropy),
            fmt(shannon.kraft),
            fmt(shannon.kl),
            fmt(shannon.residual()),
            fmt(report.kraft),
            fmt(report.identity_a_residual()),
            fmt(report.identity_b_residual()),
            fmt(report.heisenberg_lhs - report.heisenberg_rhs)};
}

std::vector<std::string> kraft_row(std::uint64_t seed, std::size_t i) {
    Rng rng(instance_seed(seed, i));
    const std::uint64_t K = rng.integer(1, 20);
    const Dyadic blocks = partial_sum_beta_le(K);
    const Dyadic brute = brute_partial_sum((std::uint64_t{1} << K) - 1);
    return {std::to_string(i), std::to_string(K), blocks.to_exact_string(), blocks.to_decimal(12),
            brute == blocks ? "yes" : "no"};
}

std::vector<std::string> flow_row(std::uint64_t seed, std::size_t i) {
    Rng rng(instance_seed(seed, i));
    const double x = std::exp(rng.uniform(std::log(std::exp(1.0) + 0.01), std::log(1e300)));
    const double star = ell_star(x);
    const double fixed = apply_T(CodelengthFn::fixed_point(), x);
    const auto square = CodelengthFn::custom("t^2", [](double t) { return t * t; }, 0.0, 1.0);
    const LogChain chain = log_chain(x);
    return {std::to_string(i),
            fmt(x),
            fmt(star),
            fmt(std::abs(fixed - star) / (1.0 + star)),
            std::to_string(chain.depth()),
            fmt(chain.tail()),
            fmt(convergence_gap(CodelengthFn::constant(3.0), x)),
            fmt(convergence_gap(square, x))};
}

int cmd_suite(const Options& o) {
    Table table({});
    std::vector<std::vector<std::string>> rows;
    if (o.suite == "identities") {
        table = Table({"instance", "atoms", "segments", "cells", "implied_K_minus_1", "implied_E_minus_H",
                       "feasible_K", "KL", "shannon_residual", "quantized_K", "identity_a", "identity_b",
                       "heisenberg_gap"});
        rows = run_parallel(o.instances, o.threads, [&](std::size_t i) { return identities_row(o.seed, i); });
    } else if (o.suite == "kraft") {
        table = Table({"instance", "K", "partial_sum", "decimal", "brute_matches"});
        rows = run_parallel(o.instances, o.threads, [&](std::size_t i) { return kraft_row(o.seed, i); });
    } else {
        table = Table({"instance", "x", "ell_star", "fixed_point_rel_residual", "depth", "tail", "gap_const3",
                       "gap_square"});
        rows = run_parallel(o.instances, o.threads, [&](std::size_t i) { return flow_row(o.seed, i); });
    }
    for (auto& r : rows) table.add(std::move(r));
    table.print(std::cout, o.output == "csv");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"omegalab: Elias omega codec, exact Kraft sums, renormalization flow and quantized-code reports"};
    app.require_subcommand(1, 1);
    Options o;

    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--output", o.output, "Output style")->check(CLI::IsMember({"text", "csv"}));
    };
    const auto codes = CLI::IsMember({"omega", "gamma", "delta"});

    auto* encode = app.add_subcommand("encode", "Encode decimal integers (one per line) into a container");
    encode->add_option("--code", o.code, "Code to use")->check(codes);
    encode->add_option("--in", o.in, "Input file (default stdin)");
    encode->add_option("--out", o.out, "Output file (default stdout)");
    encode->add_option("--format", o.format, "container or text ('0'/'1' characters)")
        ->check(CLI::IsMember({"container", "text"}));

    auto* decode = app.add_subcommand("decode", "Decode a container (or ASCII bits) into integers");
    decode->add_option("--in", o.in, "Input file (default stdin)");
    auto* decode_code = decode->add_option("--code", o.code, "Code for ASCII-bit input")->check(codes);
    add_output(decode);

    auto* len = app.add_subcommand("len", "Codelength of integers");
    len->add_option("N", o.numbers, "Positive integers")->required();
    len->add_option("--units", o.units, "bits or nats")->check(CLI::IsMember({"bits", "nats"}));
    len->add_flag("--chain", o.chain, "Also print the omega length chain");
    len->add_option("--code", o.code, "Code to measure")->check(codes);
    add_output(len);

    auto* kraft = app.add_subcommand("kraft", "Exact Kraft partial sum over all n < 2^K");
    kraft->add_option("--max-beta", o.max_beta, "K, number of binary-length blocks")
        ->required()
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
    kraft->add_option("--digits", o.digits, "Decimal digits to print")->check(CLI::Range(0U, 100000U));
    kraft->add_option("--brute", o.brute, "Also sum n = 1..N directly");
    kraft->add_option("--code", o.code, "Code to sum")->check(codes);
    kraft->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1U, 1024U));
    add_output(kraft);

    auto* flow_cmd = app.add_subcommand("flow", "Renormalization flow diagnostics");
    flow_cmd->add_option("--x", o.xs, "Point x >= 1, or lo:hi:points (log-spaced); repeatable")->required();
    flow_cmd->add_option("--init", o.init, "Initial length: zero or const:C");
    flow_cmd->add_option("--iters", o.iters, "Iterations of T (default: chain depth)")->check(CLI::NonNegativeNumber);
    flow_cmd->add_option("--report", o.report, "value, gap or chain")
        ->check(CLI::IsMember({"value", "gap", "chain"}));
    add_output(flow_cmd);

    auto* law = app.add_subcommand("law", "Validate a mixed-law file");
    law->add_option("--check", o.law_file, "Law JSON file")->required();
    add_output(law);

    auto* quantize_cmd = app.add_subcommand("quantize", "Quantized-code decomposition report");
    quantize_cmd->add_option("--law", o.law_file, "Law JSON file")->required();
    quantize_cmd->add_option("--quant", o.quant_file, "Quantization JSON file (default: read from the law file)");
    quantize_cmd->add_option("--boltzmann-base", o.boltzmann_base, "Display base D for the Boltzmann check")
        ->check(CLI::Range(2U, 1U << 20));
    quantize_cmd->add_flag("--partial", o.partial, "Allow partial coverage (identity A only)");
    add_output(quantize_cmd);

    auto* suite = app.add_subcommand("suite", "Seeded randomized verification suites");
    suite->add_option("kind", o.suite, "identities, kraft or flow")
        ->required()
        ->check(CLI::IsMember({"identities", "kraft", "flow"}));
    suite->add_option("--seed", o.seed, "Base seed")->required();
    suite->add_option("--instances", o.instances, "Number of instances");
    suite->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1U, 1024U));
    add_output(suite);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n";
        const auto* active = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        std::cerr << active->help();
        return kUsage;
    }

    try {
        if (*encode) return cmd_encode(o);
        if (*decode) return cmd_decode(o, decode_code->count() > 0);
        if (*len) return cmd_len(o);
        if (*kraft) return cmd_kraft(o);
        if (*flow_cmd) return cmd_flow(o);
        if (*law) return cmd_law(o);
        if (*quantize_cmd) return cmd_quantize(o);
        if (*suite) return cmd_suite(o);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    }
    return kUsage;
}
