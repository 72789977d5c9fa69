#include "kproj/cli/commands.hpp"

#include <glob.h>

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "kproj/cli/matrix_io.hpp"
#include "kproj/cli/report_io.hpp"
#include "kproj/decomp.hpp"
#include "kproj/verify.hpp"

namespace kproj::cli {

namespace {

struct TolFlags {
    double rank = ToleranceConfig{}.rank_tol;
    double psd = ToleranceConfig{}.psd_tol;
    double res = ToleranceConfig{}.residual_tol;

    ToleranceConfig config() const
    {
        ToleranceConfig t{rank, psd, res};
        t.validate();
        return t;
    }
};

void add_tol_flags(CLI::App* cmd, TolFlags& tol)
{
    cmd->add_option("--tol-rank", tol.rank, "rank threshold (relative)")->capture_default_str();
    cmd->add_option("--tol-psd", tol.psd, "PSD margin tolerance (relative)")->capture_default_str();
    cmd->add_option("--tol-res", tol.res, "identity residual tolerance (relative)")->capture_default_str();
}

struct GenArgs {
    std::string kind;
    Eigen::Index dim = -1;
    Eigen::Index rank = -1;
    double corner_scale = 2.0;
    std::uint64_t seed = 0;
    std::string for_path;
    std::string family;
    std::string out;
    TolFlags tol;
};

struct ExtremalArgs {
    std::string p_path;
    std::string which;
    std::string out;
    TolFlags tol;
};

struct DecomposeArgs {
    std::string p_path;
    std::string j_path;
    std::string kind = "contr-exp";
    std::string out;
    TolFlags tol;
};

struct VerifyArgs {
    std::string p_path;
    std::string j_path;
    int samples = 100;
    std::uint64_t seed = 0;
    std::string out;
    std::string glob;
    TolFlags tol;
};

const std::map<std::string, SymmetryFamily> kFamilies = {{"projection", SymmetryFamily::JProjection},
                                                         {"positive", SymmetryFamily::JPositive},
                                                         {"contractive", SymmetryFamily::JContractive}};

const std::map<std::string, ExtremalKind> kExtremes = {{"pos-min", ExtremalKind::PosMin},
                                                       {"pos-max", ExtremalKind::PosMax},
                                                       {"contr-min", ExtremalKind::ContrMin},
                                                       {"contr-max", ExtremalKind::ContrMax}};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

int cmd_gen(const GenArgs& a)
{
    const ToleranceConfig tol = a.tol.config();
    CMatrix m;
    if (a.kind == "idempotent") {
        if (a.dim < 0 || a.rank < 0) throw UsageError("gen idempotent needs --dim and --rank");
        if (!a.for_path.empty() || !a.family.empty())
            throw UsageError("--for and --family apply to gen symmetry-for only");
        m = random_idempotent(a.dim, a.rank, a.corner_scale, a.seed);
    } else {
        if (a.for_path.empty() || a.family.empty()) throw UsageError("gen symmetry-for needs --for and --family");
        const CMatrix p = read_matrix_file(a.for_path);
        const SymmetryFamily family = kFamilies.at(a.family);
        const BlockForm bf = block_form(p, tol);
        const std::vector<SymmetryParams> params = sample_params(bf, family, 1, a.seed, tol);
        m = assemble_symmetry(bf, family, params.front(), tol);
    }
    write_matrix_file(a.out, m);
    return kExitPass;
}

int cmd_extremal(const ExtremalArgs& a)
{
    const ToleranceConfig tol = a.tol.config();
    const CMatrix p = read_matrix_file(a.p_path);
    const CMatrix j = a.which == "sign-formula" ? sign_formula_symmetry(p, tol)
                                                : extremal_symmetry(p, kExtremes.at(a.which), tol);
    write_matrix_file(a.out, j);
    return kExitPass;
}

int cmd_decompose(const DecomposeArgs& a)
{
    const ToleranceConfig tol = a.tol.config();
    const CMatrix p = read_matrix_file(a.p_path);
    const CMatrix j = read_matrix_file(a.j_path);
    const bool contr = a.kind == "contr-exp";
    SplitResult split;
    try {
        require_j_projection(p, j, tol);
        split = contr ? contractive_expansive_split(p, j, tol) : positive_negative_split(p, j, tol);
    } catch (const Error& e) {
        switch (e.code()) {
        case ErrorCode::NotIdempotent:
        case ErrorCode::NotSymmetry:
        case ErrorCode::NotJProjection:
        case ErrorCode::DimensionMismatch: throw Error(ErrorCode::NotJProjection, e.what());
        default: throw;
        }
    }
    Report rep = split_report(p, j, split, tol);
    rep.subject.label = std::string(to_string(split.kind));
    write_matrix_file(a.out + (contr ? "_E1.json" : "_Q.json"), split.e1);
    write_matrix_file(a.out + (contr ? "_E2.json" : "_R.json"), split.e2);
    write_file_atomic(a.out + "_report.json", format_report(rep));
    return rep.passed() ? kExitPass : kExitCheckFailure;
}

Report verify_one(const std::string& p_path, const std::optional<CMatrix>& j, const VerifyArgs& a,
                  const ToleranceConfig& tol)
{
    const CMatrix p = read_matrix_file(p_path);
    return full_report(p, j, tol, a.samples, a.seed);
}

std::vector<std::string> expand_glob(const std::string& pattern)
{
    glob_t g{};
    const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
    std::vector<std::string> paths;
    if (rc == 0)
        for (std::size_t i = 0; i < g.gl_pathc; ++i) paths.emplace_back(g.gl_pathv[i]);
    ::globfree(&g);
    if (rc != 0 && rc != GLOB_NOMATCH) throw IoError("cannot expand " + pattern);
    std::sort(paths.begin(), paths.end());
    return paths;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out)
{
    const ToleranceConfig tol = a.tol.config();
    if (a.samples < 0) throw UsageError("--samples must be non-negative");
    if (a.glob.empty() == a.p_path.empty()) throw UsageError("verify takes either a P file or --glob");
    std::optional<CMatrix> j;
    if (!a.j_path.empty()) j = read_matrix_file(a.j_path);

    std::string text;
    bool passed = true;
    if (a.glob.empty()) {
        Report rep = verify_one(a.p_path, j, a, tol);
        passed = rep.passed();
        text = format_report(rep);
    } else {
        const std::vector<std::string> paths = expand_glob(a.glob);
        if (paths.empty()) throw IoError("no files match " + a.glob);
        std::vector<BatchCase> cases(paths.size());
        for (std::size_t i = 0; i < paths.size(); ++i) {
            cases[i].input = paths[i];
            try {
                cases[i].report = verify_one(paths[i], j, a, tol);
                passed = passed && cases[i].report.passed();
            } catch (const std::exception& e) {
                cases[i].error = e.what();
                passed = false;
            }
        }
        text = format_batch(cases);
    }
    if (a.out.empty())
        out << text;
    else
        write_file_atomic(a.out, text);
    return passed ? kExitPass : kExitCheckFailure;
}

int exit_code_for(const Error& e)
{
    switch (e.code()) {
    case ErrorCode::SingularShift: return kExitSingularShift;
    case ErrorCode::NotJProjection: return kExitNotJProjection;
    case ErrorCode::InvalidArgument:
    case ErrorCode::BadRank: return kExitUsage;
    default: return kExitCheckFailure;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Extremal symmetries and J-projection certificates for complex idempotents", "kproj"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate a random idempotent or an admissible symmetry");
    gen_cmd->add_option("kind", gen.kind, "idempotent | symmetry-for")
        ->required()
        ->check(CLI::IsMember({"idempotent", "symmetry-for"}));
    gen_cmd->add_option("--dim", gen.dim, "dimension n");
    gen_cmd->add_option("--rank", gen.rank, "rank r");
    gen_cmd->add_option("--corner-scale", gen.corner_scale, "corner block scale")->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
    gen_cmd->add_option("--for", gen.for_path, "idempotent MatrixFile");
    gen_cmd->add_option("--family", gen.family, "projection | positive | contractive")
        ->check(CLI::IsMember({"projection", "positive", "contractive"}));
    gen_cmd->add_option("-o,--out", gen.out, "output MatrixFile")->required();
    add_tol_flags(gen_cmd, gen.tol);

    ExtremalArgs ext;
    auto* ext_cmd = app.add_subcommand("extremal", "write an extremal symmetry of P");
    ext_cmd->add_option("P", ext.p_path, "idempotent MatrixFile")->required();
    ext_cmd->add_option("--which", ext.which, "pos-min | pos-max | contr-min | contr-max | sign-formula")
        ->required()
        ->check(CLI::IsMember({"pos-min", "pos-max", "contr-min", "contr-max", "sign-formula"}));
    ext_cmd->add_option("-o,--out", ext.out, "output MatrixFile")->required();
    add_tol_flags(ext_cmd, ext.tol);

    DecomposeArgs dec;
    auto* dec_cmd = app.add_subcommand("decompose", "split a J-projection");
    dec_cmd->add_option("P", dec.p_path, "idempotent MatrixFile")->required();
    dec_cmd->add_option("J", dec.j_path, "symmetry MatrixFile")->required();
    dec_cmd->add_option("--kind", dec.kind, "contr-exp | pos-neg")
        ->capture_default_str()
        ->check(CLI::IsMember({"contr-exp", "pos-neg"}));
    dec_cmd->add_option("-o,--out", dec.out, "output prefix")->required();
    add_tol_flags(dec_cmd, dec.tol);

    VerifyArgs ver;
    auto* ver_cmd = app.add_subcommand("verify", "run every certificate check and write a report");
    ver_cmd->add_option("P", ver.p_path, "idempotent MatrixFile");
    ver_cmd->add_option("J", ver.j_path, "optional symmetry MatrixFile");
    ver_cmd->add_option("--samples", ver.samples, "admissible symmetries drawn per family")->capture_default_str();
    ver_cmd->add_option("--seed", ver.seed, "RNG seed")->capture_default_str();
    ver_cmd->add_option("-o,--out", ver.out, "output ReportFile (stdout when omitted)");
    ver_cmd->add_option("--glob", ver.glob, "verify every P file matching this pattern");
    add_tol_flags(ver_cmd, ver.tol);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (gen_cmd->parsed()) return cmd_gen(gen);
        if (ext_cmd->parsed()) return cmd_extremal(ext);
        if (dec_cmd->parsed()) return cmd_decompose(dec);
        return cmd_verify(ver, out);
    } catch (const UsageError& e) {
        err << "kproj: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        err << "kproj: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        err << "kproj: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int run_cli(int argc, char** argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace kproj::cli
