#include "dqmat/verify.hpp"

#include <sstream>

#include "dqmat/dense.hpp"

namespace dqmat {

namespace {

std::string join(const std::string& dir, const std::string& name) {
    if (name.empty() || name.front() == '/' || dir.empty()) return name;
    return dir + "/" + name;
}

DQMatrix load(const Report& rep, const std::string& dir, const std::string& key) {
    return read_matrix_file(join(dir, rep.get(key)));
}

double unitarity(const DQMatrix& u) {
    const DQMatrix id = DQMatrix::Identity(u.rows());
    return std::max(max_abs(adjoint(u) * u - id), max_abs(u * adjoint(u) - id));
}

void record_parts(VerificationOutcome& out, const std::string& name, const DQMatrix& diff, double tol) {
    out.record(name + ".standard", max_abs_standard(diff), tol);
    out.record(name + ".infinitesimal", max_abs_infinitesimal(diff), tol);
}

std::vector<DualNumber> parse_pairs(const Report& rep, const std::string& prefix, int comps) {
    std::vector<DualNumber> out;
    for (int i = 0;; ++i) {
        const std::string* v = rep.find(prefix + "." + std::to_string(i));
        if (!v) break;
        std::istringstream in(*v);
        for (int c = 0; c < comps / 2; ++c) {
            DualNumber d;
            if (!(in >> d.st >> d.in)) throw ParseError("report: malformed entry " + prefix);
            out.push_back(d);
        }
    }
    return out;
}

// C and S entries are stored interleaved: "c_st c_in s_st s_in".
void check_pairs(VerificationOutcome& out, const Report& rep, double tol) {
    double worst_st = 0.0, worst_in = 0.0;
    int count = 0;
    for (int i = 0;; ++i) {
        const std::string* v = rep.find("pair." + std::to_string(i));
        if (!v) break;
        std::istringstream in(*v);
        DualNumber c, s;
        if (!(in >> c.st >> c.in >> s.st >> s.in)) throw ParseError("report: malformed pair entry");
        const DualNumber gap = c * c + s * s - DualNumber(1.0);
        worst_st = std::max(worst_st, std::abs(gap.st));
        worst_in = std::max(worst_in, std::abs(gap.in));
        ++count;
    }
    if (count) {
        out.record("residual.pairing.standard", worst_st, tol);
        out.record("residual.pairing.infinitesimal", worst_in, tol);
    }
}

void check_sigma_order(VerificationOutcome& out, const Report& rep, double tol) {
    const std::vector<DualNumber> sigma = parse_pairs(rep, "sigma", 2);
    double bad = 0.0;
    bool seen_infinitesimal = false;
    for (size_t i = 0; i < sigma.size(); ++i) {
        if (i > 0 && sigma[i] > sigma[i - 1]) bad = 1.0;
        const bool appr = std::abs(sigma[i].st) > 0.0;
        if (appr && seen_infinitesimal) bad = 1.0;
        if (!appr) seen_infinitesimal = true;
    }
    if (!sigma.empty()) out.record("residual.sigma_ordering", bad, tol);
}

}  // namespace

VerificationOutcome verify_report(const Report& rep, const std::string& dir) {
    const std::string kind = rep.get("decomposition");
    ToleranceConfig tol;
    tol.residual_tol = std::stod(rep.get("tolerance.residual"));
    const double rt = tol.residual_tol;

    VerificationOutcome out;

    if (kind == "qr") {
        const DQMatrix a = load(rep, dir, "input.a.path");
        const DQMatrix q = load(rep, dir, "factor.Q");
        const DQMatrix r = load(rep, dir, "factor.R");
        std::istringstream ps(rep.get("perm"));
        DQMatrix pi(a.cols(), a.cols());
        for (Index j = 0; j < a.cols(); ++j) {
            Index pj;
            if (!(ps >> pj)) throw ParseError("report: malformed perm");
            pi(pj, j) = DualQuaternion(1.0);
        }
        DQMatrix rfull(a.rows(), a.cols());
        rfull.set_block(0, 0, r);
        record_parts(out, "residual.reconstruction", a * pi - q * rfull, rt);
        out.record("residual.unitarity.Q", unitarity(q), rt);
    } else if (kind == "svd" || kind == "product-svd") {
        const DQMatrix u = load(rep, dir, kind == "svd" ? "factor.U" : "factor.H");
        const DQMatrix v = load(rep, dir, kind == "svd" ? "factor.V" : "factor.N");
        const DQMatrix mid = load(rep, dir, "factor.Sigma");
        DQMatrix target;
        if (kind == "svd") {
            target = load(rep, dir, "input.a.path");
        } else {
            target = load(rep, dir, "input.a.path") * load(rep, dir, "input.b.path");
        }
        record_parts(out, "residual.reconstruction", target - u * mid * adjoint(v), rt);
        out.record("residual.unitarity.U", unitarity(u), rt);
        out.record("residual.unitarity.V", unitarity(v), rt);
        check_sigma_order(out, rep, rt);
    } else if (kind == "cs") {
        const DQMatrix w = load(rep, dir, "input.a.path");
        const DQMatrix u1 = load(rep, dir, "factor.U1");
        const DQMatrix u2 = load(rep, dir, "factor.U2");
        const DQMatrix v1 = load(rep, dir, "factor.V1");
        const DQMatrix mid = load(rep, dir, "factor.middle");
        const bool two_by_two = rep.find("factor.V2") != nullptr;
        DQMatrix left = block_diag(adjoint(u1), adjoint(u2)) * w;
        DQMatrix right;
        if (two_by_two) {
            const DQMatrix v2 = load(rep, dir, "factor.V2");
            right = left * block_diag(v1, v2);
            out.record("residual.unitarity.V2", unitarity(v2), rt);
        } else {
            right = left * v1;
        }
        record_parts(out, "residual.reconstruction", right - mid, rt);
        out.record("residual.unitarity.U1", unitarity(u1), rt);
        out.record("residual.unitarity.U2", unitarity(u2), rt);
        out.record("residual.unitarity.V1", unitarity(v1), rt);
        check_pairs(out, rep, rt);
    } else if (kind == "gsvd1" || kind == "gsvd1-regular" || kind == "gsvd2") {
        const DQMatrix a = load(rep, dir, "input.a.path");
        const DQMatrix b = load(rep, dir, "input.b.path");
        const DQMatrix u = load(rep, dir, "factor.U");
        const DQMatrix v = load(rep, dir, "factor.V");
        const DQMatrix x = load(rep, dir, "factor.X");
        const DQMatrix sa = load(rep, dir, "factor.SigmaA");
        const DQMatrix sb = load(rep, dir, "factor.SigmaB");
        if (kind == "gsvd2") {
            record_parts(out, "residual.reconstruction.a", adjoint(u) * a * x - sa, rt);
            record_parts(out, "residual.reconstruction.b", adjoint(v) * b * x - sb, rt);
        } else {
            record_parts(out, "residual.reconstruction.a", a - u * sa * x, rt);
            record_parts(out, "residual.reconstruction.b", b - v * sb * x, rt);
        }
        out.record("residual.unitarity.U", unitarity(u), rt);
        out.record("residual.unitarity.V", unitarity(v), rt);
        if (kind == "gsvd1-regular") {
            const DQMatrix xinv = load(rep, dir, "factor.Xinv");
            const DQMatrix id = DQMatrix::Identity(x.rows());
            out.record("residual.x_inverse", std::max(max_abs(x * xinv - id), max_abs(xinv * x - id)), rt);
            const DQMatrix na = load(rep, dir, "factor.NA");
            const DQMatrix nb = load(rep, dir, "factor.NB");
            if (na.cols() > 0) {
                const DQMatrix gram =
                    adjoint(na) * na + adjoint(nb) * nb - DQMatrix::Identity(na.cols());
                out.record("residual.coupling_columns", max_abs(gram), rt);
            }
        }
        check_pairs(out, rep, rt);
    } else if (kind == "psvd") {
        const DQMatrix a = load(rep, dir, "input.a.path");
        const DQMatrix b = load(rep, dir, "input.b.path");
        const DQMatrix u = load(rep, dir, "factor.U");
        const DQMatrix x = load(rep, dir, "factor.X");
        const DQMatrix xinv = load(rep, dir, "factor.Xinv");
        const DQMatrix y = load(rep, dir, "factor.Y");
        const DQMatrix yinv = load(rep, dir, "factor.Yinv");
        const DQMatrix da = load(rep, dir, "factor.DA");
        const DQMatrix db = load(rep, dir, "factor.DB");
        record_parts(out, "residual.reconstruction.a", a - u * da * xinv, rt);
        record_parts(out, "residual.reconstruction.b", b - x * db * y, rt);
        out.record("residual.unitarity.U", unitarity(u), rt);
        const DQMatrix idn = DQMatrix::Identity(x.rows());
        const DQMatrix idp = DQMatrix::Identity(y.rows());
        out.record("residual.x_inverse", std::max(max_abs(x * xinv - idn), max_abs(xinv * x - idn)), rt);
        out.record("residual.y_inverse", std::max(max_abs(y * yinv - idp), max_abs(yinv * y - idp)), rt);
    } else if (kind == "ccd") {
        const DQMatrix a = load(rep, dir, "input.a.path");
        const DQMatrix b = load(rep, dir, "input.b.path");
        const DQMatrix q = load(rep, dir, "factor.Q");
        const DQMatrix xa = load(rep, dir, "factor.XA");
        const DQMatrix xb = load(rep, dir, "factor.XB");
        const DQMatrix sa = load(rep, dir, "factor.SigmaA");
        const DQMatrix sb = load(rep, dir, "factor.SigmaB");
        record_parts(out, "residual.reconstruction.a", a - q * sa * xa, rt);
        record_parts(out, "residual.reconstruction.b", b - q * sb * xb, rt);
        out.record("residual.unitarity.Q", unitarity(q), rt);
        // Sigma_B must be exactly [I_q; 0].
        const Index rank_b = static_cast<Index>(std::stoll(rep.get("block.q")));
        DQMatrix expected(sb.rows(), sb.cols());
        for (Index i = 0; i < rank_b; ++i) expected(i, i) = DualQuaternion(1.0);
        out.record("residual.sigma_b_form", max_abs(sb - expected), 0.0);
        check_pairs(out, rep, rt);
    } else {
        throw ParseError("report: unknown decomposition '" + kind + "'");
    }

    // Input digests, when the files still resolve, must match.
    for (const std::string side : {"a", "b"}) {
        const std::string* path = rep.find("input." + side + ".path");
        const std::string* digest = rep.find("input." + side + ".digest");
        if (path && digest && *digest != file_digest(join(dir, *path))) out.pass = false;
    }
    return out;
}

}  // namespace dqmat
