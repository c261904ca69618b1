// hsgw: sampling, exact tables and Monte Carlo experiments from the command line.

#include "hsgw/error.hpp"
#include "hsgw/exact.hpp"
#include "hsgw/experiments.hpp"
#include "hsgw/lukasiewicz.hpp"
#include "hsgw/model_io.hpp"
#include "hsgw/sampler.hpp"
#include "hsgw/tree_text.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

namespace {

using namespace hsgw;

// "1e3,1e4,316" -> {1000, 10000, 316}
std::vector<std::int64_t> parse_ns(const std::string& text)
{
    std::vector<std::int64_t> ns;
    std::stringstream in(text);
    in.imbue(std::locale::classic());
    for (std::string item; std::getline(in, item, ',');) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ParameterError("--ns: cannot parse '" + item + "'");
        }
        if (used != item.size() || !(v >= 1) || v > 9e15 || v != std::floor(v))
            throw ParameterError("--ns: '" + item + "' is not a positive integer");
        ns.push_back(static_cast<std::int64_t>(v));
    }
    if (ns.empty()) throw ParameterError("--ns: empty list");
    return ns;
}

ModelSpec read_model(const std::string& path)
{
    if (path.empty()) return ModelSpec{.family = "binary"};
    return load_model_spec(path);
}

// owns the file when a path is given, otherwise writes to stdout
class Output
{
public:
    explicit Output(const std::string& path)
    {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw ParameterError("cannot open " + path + " for writing");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

struct SampleArgs
{
    std::string model;
    std::vector<std::string> mode{"plain"};
    std::int64_t count = 1;
    std::uint64_t seed = 1;
    std::int64_t max_nodes = 100'000'000;
    std::string out;
};

int run_sample(const SampleArgs& a)
{
    const OffspringModel model = build_model(read_model(a.model));
    GwSampler sampler(model, {.seed = a.seed, .max_nodes = a.max_nodes});
    const std::string& kind = a.mode.front();
    std::int64_t param = 0;
    if (kind != "plain") {
        if (a.mode.size() != 2) throw ParameterError("--mode " + kind + " needs an integer argument");
        param = std::stoll(a.mode[1]);
    } else if (a.mode.size() != 1) {
        throw ParameterError("--mode plain takes no argument");
    }

    Output out(a.out);
    auto& os = out.stream();
    for (std::int64_t i = 0; i < a.count; ++i) {
        if (kind == "plain") {
            const GwResult r = sampler.sample_gw();
            if (const auto* cap = std::get_if<CapExceeded>(&r)) {
                os << "# capped after " << cap->nodes << " nodes\n";
                continue;
            }
            os << format_lukasiewicz_line(to_lukasiewicz(std::get<Tree>(r))) << '\n';
        } else if (kind == "exact") {
            os << format_lukasiewicz_line(to_lukasiewicz(sampler.sample_exact_size(param))) << '\n';
        } else if (kind == "atleast") {
            os << format_lukasiewicz_line(to_lukasiewicz(sampler.sample_at_least_size(param))) << '\n';
        } else if (kind == "kesten") {
            const KestenSlice slice = sampler.sample_kesten(param);
            os << "# spine end " << slice.marked() << '\n';
            os << format_lukasiewicz_line(to_lukasiewicz(slice.to_tree())) << '\n';
        } else {
            throw ParameterError("--mode must be plain, exact, atleast or kesten");
        }
    }
    std::cerr << "acceptance rate " << sampler.retry_stats().acceptance_rate() << '\n';
    return 0;
}

int run_exact_tail(const std::string& model_path, std::int64_t N, const std::string& path)
{
    const TailTable table = tail_table(build_model(read_model(model_path)), N);
    Output out(path);
    auto& os = out.stream();
    os.imbue(std::locale::classic());
    os << std::setprecision(17) << "n,Q_n,q_n,err\n";
    for (std::int64_t n = 0; n <= table.max_n(); ++n)
        os << n << ',' << table.Q[std::size_t(n)] << ',' << table.q(n) << ',' << table.error[std::size_t(n)] << '\n';
    return 0;
}

int run_exact_sizepmf(const std::string& model_path, std::int64_t n, const std::string& path)
{
    const OffspringModel model = build_model(read_model(model_path));
    Output out(path);
    auto& os = out.stream();
    os.imbue(std::locale::classic());
    os << std::setprecision(17) << "n,p\n";
    for (std::int64_t k = 1; k <= n; ++k) os << k << ',' << size_pmf(model, k) << '\n';
    return 0;
}

struct ExperimentArgs
{
    std::string which;
    std::string model;
    std::string ns = "1e3,1e4";
    std::int64_t samples = 1000;
    std::string out;
    std::int64_t table_size = 1000;
    ExperimentConfig cfg;
};

int run_experiment(const ExperimentArgs& a)
{
    const ModelSpec spec = read_model(a.model);
    ExperimentReport rep;
    if (a.which == "theorem1") {
        rep = run_theorem1(spec, parse_ns(a.ns), a.samples, a.cfg);
    } else if (a.which == "theorem2") {
        rep = run_theorem2(spec, parse_ns(a.ns), a.samples, a.cfg);
    } else if (a.which == "theorem3") {
        rep = run_theorem3(spec, parse_ns(a.ns), a.samples, a.cfg);
    } else {
        TailConfig tail;
        tail.table_size = a.table_size;
        std::erase_if(tail.upsilon_ns, [&](std::int64_t n) { return n > a.table_size; });
        rep = run_tail_experiment(spec, a.samples, a.cfg, tail);
    }
    if (a.out.empty())
        write_csv(std::cout, rep);
    else
        save_report(rep, a.out);
    std::cerr << format_gates(rep);
    return rep.hard_gates_passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Horton-Strahler numbers of critical Galton-Watson trees"};
    app.require_subcommand(1);

    SampleArgs sa;
    auto* sample = app.add_subcommand("sample", "draw trees, one Lukasiewicz excursion per line");
    sample->add_option("--model", sa.model, "model JSON file (default: binary)")->check(CLI::ExistingFile);
    sample->add_option("--mode", sa.mode, "plain | exact N | atleast N | kesten H")->expected(1, 2);
    sample->add_option("--count", sa.count, "number of trees")->check(CLI::PositiveNumber);
    sample->add_option("--seed", sa.seed, "random seed");
    sample->add_option("--max-nodes", sa.max_nodes, "node cap for plain draws")->check(CLI::PositiveNumber);
    sample->add_option("--out", sa.out, "output file (default: stdout)");

    auto* exact = app.add_subcommand("exact", "exact tables");
    exact->require_subcommand(1);
    std::string tail_model, tail_out, size_model, size_out;
    std::int64_t tail_n = 500, size_n = 100;
    auto* tail = exact->add_subcommand("tail", "Q_n = -ln P(S > n) for n = 0..N");
    tail->add_option("--model", tail_model, "model JSON file (default: binary)")->check(CLI::ExistingFile);
    tail->add_option("--N", tail_n, "largest n")->check(CLI::NonNegativeNumber);
    tail->add_option("--out", tail_out, "CSV file (default: stdout)");
    auto* sizepmf = exact->add_subcommand("sizepmf", "P(#tau = k) for k = 1..n");
    sizepmf->add_option("--model", size_model, "model JSON file (default: binary)")->check(CLI::ExistingFile);
    sizepmf->add_option("--n", size_n, "largest size")->check(CLI::PositiveNumber);
    sizepmf->add_option("--out", size_out, "CSV file (default: stdout)");

    ExperimentArgs ea;
    auto* experiment = app.add_subcommand("experiment", "Monte Carlo experiment with acceptance gates");
    experiment->add_option("which", ea.which, "theorem1 | theorem2 | theorem3 | tail")
        ->required()
        ->check(CLI::IsMember({"theorem1", "theorem2", "theorem3", "tail"}));
    experiment->add_option("--model", ea.model, "model JSON file (default: binary)")->check(CLI::ExistingFile);
    experiment->add_option("--ns", ea.ns, "comma-separated sizes, e.g. 1e3,1e4");
    experiment->add_option("--samples", ea.samples, "replicates per n")->check(CLI::PositiveNumber);
    experiment->add_option("--seed", ea.cfg.seed, "random seed");
    experiment->add_option("--threads", ea.cfg.threads, "worker threads")->check(CLI::PositiveNumber);
    experiment->add_option("--chunk", ea.cfg.chunk, "replicates per task")->check(CLI::PositiveNumber);
    experiment->add_option("--max-nodes", ea.cfg.max_nodes, "node cap per draw")->check(CLI::PositiveNumber);
    experiment->add_option("--attempt-budget", ea.cfg.attempt_budget,
                           "expected rejection attempts per exact-size row, 0 = unlimited")
        ->check(CLI::NonNegativeNumber);
    experiment->add_option("--N", ea.table_size, "tail: size of the exact table")->check(CLI::PositiveNumber);
    experiment->add_option("--out", ea.out, "report.csv or report.json (default: CSV on stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sample) return run_sample(sa);
        if (*tail) return run_exact_tail(tail_model, tail_n, tail_out);
        if (*sizepmf) return run_exact_sizepmf(size_model, size_n, size_out);
        if (*experiment) return run_experiment(ea);
    } catch (const std::exception& e) {
        std::cerr << "hsgw: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
