// Command-line front end: read DQMAT v1 matrix files, run a named
// decomposition, write the factors next to the input and emit a verification
// report.  Exit codes: 0 success, 2 parse error, 3 rejected input
// (dimensions, zero input, structural preconditions), 4 verification failure
// (factors are still written).

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "dqmat/io.hpp"
#include "dqmat/psvd_ccd.hpp"
#include "dqmat/verify.hpp"

namespace fs = std::filesystem;
using namespace dqmat;

namespace {

struct RunContext {
    std::string command;
    std::vector<std::string> inputs;
    ToleranceConfig tol;
    Index row_split = -1;
    Index col_split = -1;

    std::string dir;     // directory of the first input
    std::string prefix;  // basename stem + "." + command
    Report rep;

    void start() {
        const fs::path in(inputs.at(0));
        dir = in.has_parent_path() ? in.parent_path().string() : std::string(".");
        std::string stem = in.filename().string();
        if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".dqm") stem.resize(stem.size() - 4);
        prefix = stem + "." + command;
        rep.add("decomposition", command);
        rep.add("tolerance.appreciable", tol.appreciable_tol);
        rep.add("tolerance.rank", tol.rank_tol);
        rep.add("tolerance.residual", tol.residual_tol);
        const char* names = "ab";
        for (size_t i = 0; i < inputs.size(); ++i) {
            const std::string key = std::string("input.") + names[i];
            rep.add(key + ".path", fs::path(inputs[i]).filename().string());
            rep.add(key + ".digest", file_digest(inputs[i]));
        }
    }

    void factor(const std::string& name, const DQMatrix& m) {
        const std::string file = prefix + "." + name + ".dqm";
        write_matrix_file(dir + "/" + file, m);
        rep.add("factor." + name, file);
    }

    void sigma_list(const std::vector<DualNumber>& sigma) {
        for (size_t i = 0; i < sigma.size(); ++i)
            rep.add("sigma." + std::to_string(i),
                    format_double(sigma[i].st) + " " + format_double(sigma[i].in));
    }

    void pair_list(const std::vector<DualNumber>& c, const std::vector<DualNumber>& s) {
        for (size_t i = 0; i < c.size() && i < s.size(); ++i)
            rep.add("pair." + std::to_string(i),
                    format_double(c[i].st) + " " + format_double(c[i].in) + " " +
                        format_double(s[i].st) + " " + format_double(s[i].in));
    }

    int finish() {
        const VerificationOutcome v = verify_report(rep, dir);
        for (const auto& [name, value] : v.residuals) rep.add(name, value);
        rep.add("pass", v.pass);
        const std::string path = dir + "/" + prefix + ".report.txt";
        write_report_file(path, rep);
        std::cout << rep.to_text();
        std::cout << "report = " << path << "\n";
        return v.pass ? 0 : 4;
    }
};

int run_command(RunContext& ctx) {
    ctx.start();
    const DQMatrix a = read_matrix_file(ctx.inputs.at(0));
    DQMatrix b;
    if (ctx.inputs.size() > 1) b = read_matrix_file(ctx.inputs.at(1));
    const ToleranceConfig& tol = ctx.tol;

    if (ctx.command == "qr") {
        const QRFactorization f = qr_pivoted(a, tol);
        ctx.factor("Q", f.Q);
        ctx.factor("R", f.R);
        std::string perm;
        for (Index j : f.perm) perm += (perm.empty() ? "" : " ") + std::to_string(j);
        ctx.rep.add("perm", perm);
        ctx.rep.add("block.rank", f.rank);
        ctx.rep.add("block.arank", f.arank);
    } else if (ctx.command == "svd") {
        const DQSVDFactorization f = dqsvd(a, tol);
        ctx.factor("U", f.U);
        ctx.factor("V", f.V);
        ctx.factor("Sigma", f.middle(a.rows(), a.cols()));
        ctx.sigma_list(f.sigma);
        ctx.rep.add("block.rank", f.rank);
        ctx.rep.add("block.arank", f.arank);
    } else if (ctx.command == "product-svd") {
        const DQSVDFactorization f = product_svd(a, b, tol);
        ctx.factor("H", f.U);
        ctx.factor("N", f.V);
        ctx.factor("Sigma", f.middle(a.rows(), b.cols()));
        ctx.sigma_list(f.sigma);
        ctx.rep.add("block.rank", f.rank);
        ctx.rep.add("block.arank", f.arank);
    } else if (ctx.command == "cs") {
        if (ctx.row_split < 0) throw DimensionMismatchError("cs requires --row-split");
        CSFactorization f = ctx.col_split >= 0 ? cs_decompose_2x2(a, ctx.row_split, ctx.col_split, tol)
                                               : cs_decompose_2x1(a, ctx.row_split, tol);
        ctx.factor("U1", f.U1);
        ctx.factor("U2", f.U2);
        ctx.factor("V1", f.V1);
        if (ctx.col_split >= 0) ctx.factor("V2", f.V2);
        ctx.factor("middle", f.middle);
        ctx.pair_list(f.C, f.S);
        ctx.rep.add("block.ones_coupled", f.blocks.ones_coupled);
        ctx.rep.add("block.ones_plain", f.blocks.ones_plain);
        ctx.rep.add("block.mid", f.blocks.mid);
        ctx.rep.add("block.inf", f.blocks.inf);
        ctx.rep.add("block.zero", f.blocks.zero);
    } else if (ctx.command == "gsvd1" || ctx.command == "gsvd1-regular") {
        const GSVD1Factorization f = ctx.command == "gsvd1" ? dqgsvd1_cs(a, b, tol)
                                                            : dqgsvd1_regular(a, b, tol);
        ctx.factor("U", f.U);
        ctx.factor("V", f.V);
        ctx.factor("X", f.X);
        ctx.factor("SigmaA", f.SigmaA);
        ctx.factor("SigmaB", f.SigmaB);
        if (f.form2) {
            ctx.factor("Xinv", *f.Xinv);
            ctx.factor("NA", f.NA);
            ctx.factor("NB", f.NB);
        }
        ctx.pair_list(f.SA, f.SB);
        ctx.rep.add("block.k", f.blocks.k);
        ctx.rep.add("block.t", f.blocks.t);
        ctx.rep.add("block.s", f.blocks.s);
        ctx.rep.add("block.r", f.blocks.r);
        ctx.rep.add("block.q", f.blocks.q);
        ctx.rep.add("block.t1", f.blocks.t1);
        ctx.rep.add("block.r1", f.blocks.r1);
        ctx.rep.add("block.r2", f.blocks.r2);
        ctx.rep.add("x_singular", f.x_singular);
    } else if (ctx.command == "gsvd2") {
        const GSVD2Factorization f = dqgsvd2(a, b, tol);
        ctx.factor("U", f.U);
        ctx.factor("V", f.V);
        ctx.factor("X", f.X);
        ctx.factor("SigmaA", f.SigmaA);
        ctx.factor("SigmaB", f.SigmaB);
        ctx.pair_list(f.SA, f.SB);
        ctx.rep.add("block.t", f.blocks.t);
        ctx.rep.add("block.s", f.blocks.s);
        ctx.rep.add("block.r", f.blocks.r);
        ctx.rep.add("block.q", f.blocks.q);
        ctx.rep.add("block.l", f.blocks.l);
        ctx.rep.add("block.r1", f.blocks.r1);
        ctx.rep.add("x_singular", f.x_singular);
    } else if (ctx.command == "psvd") {
        const PSVDFactorization f = dqpsvd(a, b, tol);
        ctx.factor("U", f.U);
        ctx.factor("X", f.X);
        ctx.factor("Xinv", f.Xinv);
        ctx.factor("Y", f.Y);
        ctx.factor("Yinv", f.Yinv);
        ctx.factor("DA", f.DA);
        ctx.factor("DB", f.DB);
        ctx.rep.add("block.r1", f.r1);
        ctx.rep.add("block.r2", f.r2);
        ctx.rep.add("block.r11", f.pre.blocks.r11);
        ctx.rep.add("block.r12", f.pre.blocks.r12);
    } else if (ctx.command == "ccd") {
        const CCDFactorization f = dqccd(a, b, tol);
        ctx.factor("Q", f.Q);
        ctx.factor("XA", f.XA);
        ctx.factor("XB", f.XB);
        ctx.factor("SigmaA", f.SigmaA);
        ctx.factor("SigmaB", f.SigmaB);
        ctx.pair_list(f.C, f.S);
        ctx.rep.add("block.p", f.blocks.p);
        ctx.rep.add("block.q", f.blocks.q);
        ctx.rep.add("block.ones_coupled", f.blocks.ones_coupled);
        ctx.rep.add("block.ones_plain", f.blocks.ones_plain);
        ctx.rep.add("block.mid", f.blocks.mid);
        ctx.rep.add("regular", f.regular);
    } else {
        throw Error("unknown command: " + ctx.command);
    }
    return ctx.finish();
}

int run_verify(const std::string& report_path) {
    const Report rep = read_report_file(report_path);
    const fs::path p(report_path);
    const std::string dir = p.has_parent_path() ? p.parent_path().string() : std::string(".");
    const VerificationOutcome v = verify_report(rep, dir);
    for (const auto& [name, value] : v.residuals)
        std::cout << name << " = " << format_double(value) << "\n";
    std::cout << "pass = " << (v.pass ? "true" : "false") << "\n";
    return v.pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual quaternion matrix decompositions"};
    app.require_subcommand(1);

    RunContext ctx;
    const std::vector<std::tuple<std::string, int, std::string>> commands = {
        {"qr", 1, "column-pivoted QR decomposition"},
        {"svd", 1, "singular value decomposition"},
        {"cs", 1, "CS decomposition of a blocked unitary matrix"},
        {"gsvd1", 2, "quotient-type generalized SVD, CS form"},
        {"gsvd1-regular", 2, "quotient-type generalized SVD with nonsingular X"},
        {"gsvd2", 2, "quotient-type generalized SVD of the appreciable part"},
        {"psvd", 2, "product-type decomposition A = U DA X^-1, B = X DB Y"},
        {"product-svd", 2, "SVD of the product A B via the product form"},
        {"ccd", 2, "canonical correlation decomposition of a pair sharing rows"},
    };
    for (const auto& [name, nargs, blurb] : commands) {
        CLI::App* sub = app.add_subcommand(name, blurb);
        sub->add_option("inputs", ctx.inputs, "matrix files in DQMAT v1 format")
            ->required()
            ->expected(nargs);
        sub->add_option("--appreciable-tol", ctx.tol.appreciable_tol,
                        "threshold on |standard part| (default 1e-12)");
        sub->add_option("--rank-tol", ctx.tol.rank_tol, "singular value cutoff (default 1e-10)");
        sub->add_option("--residual-tol", ctx.tol.residual_tol,
                        "verification threshold (default 1e-9)");
        if (name == "cs") {
            sub->add_option("--row-split", ctx.row_split, "rows in the leading block");
            sub->add_option("--col-split", ctx.col_split,
                            "columns in the leading block (omit for the 2-by-1 form)");
        }
        sub->callback([&ctx, name = name]() { ctx.command = name; });
    }
    std::string report_path;
    CLI::App* ver = app.add_subcommand("verify", "recheck a report's factors from files alone");
    ver->add_option("report", report_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        ctx.tol.validate();
        if (ver->parsed()) return run_verify(report_path);
        return run_command(ctx);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
