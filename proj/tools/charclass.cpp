// charclass: evaluate irreducible characters of classical groups at a
// numerically given element, via determinant ratios over entries of matrix
// powers, with eigenvalue-based cross checks.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "charclass/charclass.hpp"
#include "charclass/cli.hpp"

namespace {

using namespace charclass;

std::vector<int> parse_weight(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        const int v = std::stoi(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("weight: bad entry '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("weight: empty");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"character values of classical groups from entries of matrix powers"};
    app.require_subcommand(1);

    std::string family_str = "gl", weight_str, matrix_path, method_str = "paper",
                variant_str = "full";
    int rank = 1, t_shift = 0, trials = 100;
    std::uint64_t seed = 0;
    double tol = 1e-8, scale = 0.5;
    bool fallback = false, check = false;

    auto* eval = app.add_subcommand("eval", "evaluate a character at a matrix");
    eval->add_option("--group", family_str, "gl|sl|so-odd|sp|so-even")->required();
    eval->add_option("--rank", rank, "group rank")->required();
    eval->add_option("--weight", weight_str, "comma-separated weight entries")->required();
    eval->add_option("--matrix", matrix_path, "matrix JSON file")->required();
    eval->add_option("--method", method_str, "paper|oracle|both");
    eval->add_option("--variant", variant_str, "full|reduced (gl only)");
    eval->add_option("--t-shift", t_shift, "integer exponent shift (gl only)");
    eval->add_option("--seed", seed, "pivot selection seed");
    eval->add_option("--tol", tol, "tolerance for --method both");
    eval->add_flag("--fallback", fallback, "perturbation fallback at degenerate elements");

    auto* verify = app.add_subcommand("verify", "randomized engine-vs-oracle campaign");
    verify->add_option("--group", family_str, "gl|sl|so-odd|sp|so-even")->required();
    verify->add_option("--rank", rank, "group rank")->required();
    verify->add_option("--trials", trials, "number of sampled elements")->required();
    verify->add_option("--seed", seed, "campaign seed");
    verify->add_option("--tol", tol, "pass/fail tolerance");

    auto* dim = app.add_subcommand("dim", "dimension of the irreducible representation");
    dim->add_option("--group", family_str, "gl|sl|so-odd|sp|so-even")->required();
    dim->add_option("--rank", rank, "group rank")->required();
    dim->add_option("--weight", weight_str, "comma-separated weight entries")->required();
    dim->add_flag("--check", check, "cross-check against the fallback at the identity");

    auto* sample_cmd = app.add_subcommand("sample", "emit a random group element as JSON");
    sample_cmd->add_option("--group", family_str, "gl|sl|so-odd|sp|so-even")->required();
    sample_cmd->add_option("--rank", rank, "group rank")->required();
    sample_cmd->add_option("--seed", seed, "sampling seed");
    sample_cmd->add_option("--scale", scale, "Lie-algebra step size (>= 0)");

    CLI11_PARSE(app, argc, argv);

    try {
        const Family family = cli::parse_family(family_str);
        if (eval->parsed()) {
            cli::EvalRequest req;
            req.family = family;
            req.rank = rank;
            req.weight = parse_weight(weight_str);
            if (method_str == "paper")
                req.method = cli::Method::Paper;
            else if (method_str == "oracle")
                req.method = cli::Method::Oracle;
            else if (method_str == "both")
                req.method = cli::Method::Both;
            else
                throw std::invalid_argument("method must be paper|oracle|both");
            if (variant_str == "full")
                req.variant = GlVariant::Full;
            else if (variant_str == "reduced")
                req.variant = GlVariant::Reduced;
            else
                throw std::invalid_argument("variant must be full|reduced");
            req.t_shift = t_shift;
            req.seed = seed;
            req.tol = tol;
            req.fallback = fallback;

            std::ifstream in(matrix_path);
            if (!in) {
                std::cout << "error: cannot open " << matrix_path << "\n";
                return 1;
            }
            std::stringstream buffer;
            buffer << in.rdbuf();
            ComplexMatrix g;
            try {
                g = read_matrix_json(buffer.str());
            } catch (const nlohmann::json::parse_error& e) {
                std::cout << "error: " << e.what() << "\n";
                return 1;
            }
            return cli::run_eval(req, g, std::cout);
        }
        if (verify->parsed()) return cli::run_verify(family, rank, trials, seed, tol, std::cout);
        if (dim->parsed()) return cli::run_dim(family, rank, parse_weight(weight_str), check, std::cout);
        if (sample_cmd->parsed()) return cli::run_sample(family, rank, seed, scale, std::cout);
    } catch (const std::invalid_argument& e) {
        std::cout << "error: " << e.what() << "\n";
        return 1;
    } catch (const charclass::Error& e) {
        std::cout << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
