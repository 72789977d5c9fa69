#include "kproj/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "kproj/refs.hpp"

namespace kproj {

PsdTest psd_test(const CMatrix& a, const ToleranceConfig& tol)
{
    require_square(a, "psd_test");
    require_finite(a, "psd_test");
    PsdTest out;
    if (a.rows() == 0) {
        out.holds = true;
        return out;
    }
    const double scale = tolerance_scale(a);
    out.hermitian_residual = (a - a.adjoint()).norm();
    const CMatrix h = (a + a.adjoint()) / 2.0;
    out.margin = lambda_min(h, tol);
    out.holds = out.hermitian_residual <= tol.residual_tol * scale && out.margin >= -tol.psd_tol * scale;
    return out;
}

ContractivityTest contractivity_test(const CMatrix& p, const CMatrix& j, bool expansive, const ToleranceConfig& tol)
{
    const CMatrix pjp = p.adjoint() * j * p;
    const CMatrix diff = expansive ? CMatrix(pjp - j) : CMatrix(j - pjp);
    const LoewnerVerdict v = loewner_geq(expansive ? pjp : j, expansive ? j : pjp, tol);
    const double scale = std::max(tolerance_scale(j), tolerance_scale(pjp));
    ContractivityTest out;
    out.margin = v.margin;
    out.coupling = (diff * p).norm();
    out.holds = v.geq && out.coupling <= tol.residual_tol * scale;
    return out;
}

namespace {

void require_pair(const CMatrix& p, const CMatrix& j, const ToleranceConfig& tol, const char* where)
{
    require_idempotent(p, tol, where);
    require_square(j, where);
    if (j.rows() != p.rows()) throw Error(ErrorCode::DimensionMismatch, std::string(where) + ": J and P differ in size");
    if (!is_symmetry(j, tol)) throw Error(ErrorCode::NotSymmetry, std::string(where) + ": J is not a symmetry");
}

double symmetry_residual(const CMatrix& j)
{
    return std::max((j - j.adjoint()).norm(), (j * j - identity(j.rows())).norm());
}

std::string draw_name(int index, const char* what)
{
    char buf[48];
    std::snprintf(buf, sizeof(buf), "draw[%03d].%s", index, what);
    return buf;
}

// The family predicate as a check: JP >= 0 or P*JP <= J.
CheckResult admissibility(const std::string& name, const char* ref, const CMatrix& p, const CMatrix& j,
                          SymmetryFamily family, const ToleranceConfig& tol)
{
    if (family == SymmetryFamily::JPositive) {
        const PsdTest t = psd_test(j * p, tol);
        return CheckResult::verdict(name, ref, t.holds, t.hermitian_residual, t.margin, tol.psd_tol,
                                    "JP >= 0");
    }
    if (family == SymmetryFamily::JContractive) {
        const ContractivityTest t = contractivity_test(p, j, false, tol);
        return CheckResult::verdict(name, ref, t.holds, t.coupling, t.margin, tol.psd_tol, "P*JP <= J");
    }
    const double res = (j * p * j - p.adjoint()).norm();
    return CheckResult::residual_check(name, ref, res, tol.residual_tol * tolerance_scale(p), "JPJ = P*");
}

Subject make_subject(const CMatrix& p, const std::optional<CMatrix>& j, const ToleranceConfig& tol)
{
    Subject s;
    s.dim = p.rows();
    s.rank = p.allFinite() ? fundamental_subspaces(p, tol).range.cols() : 0;
    s.p_hash = matrix_hash(p);
    if (j) s.j_hash = matrix_hash(*j);
    return s;
}

}  // namespace

Classification classify(const CMatrix& p, const CMatrix& j, const ToleranceConfig& tol)
{
    require_pair(p, j, tol, "classify");
    Classification c;
    c.projection_residual = (j * p * j - p.adjoint()).norm();
    c.j_projection = c.projection_residual <= tol.residual_tol * tolerance_scale(p);

    const CMatrix jp = j * p;
    const PsdTest pos = psd_test(jp, tol);
    const PsdTest neg = psd_test(-jp, tol);
    c.j_positive = pos.holds;
    c.positive_margin = pos.margin;
    c.j_negative = neg.holds;
    c.negative_margin = neg.margin;

    const ContractivityTest contr = contractivity_test(p, j, false, tol);
    const ContractivityTest expan = contractivity_test(p, j, true, tol);
    c.j_contractive = contr.holds;
    c.contractive_margin = contr.margin;
    c.j_expansive = expan.holds;
    c.expansive_margin = expan.margin;
    return c;
}

CheckResult lemma11_check(const CMatrix& p, const CMatrix& j, const ToleranceConfig& tol)
{
    require_pair(p, j, tol, "lemma11_check");
    const ContractivityTest left = contractivity_test(p, j, false, tol);
    const PsdTest right = psd_test(j * (identity(p.rows()) - p), tol);
    const bool agree = left.holds == right.holds;

    double residual = 0.0;
    if (!agree)
        residual = std::max({std::max(0.0, -left.margin), left.coupling, std::max(0.0, -right.margin),
                             right.hermitian_residual});
    std::string note = std::string("P*JP<=J ") + (left.holds ? "holds" : "fails") + ", J(I-P)>=0 " +
                       (right.holds ? "holds" : "fails");
    return CheckResult::verdict("contractive_iff_complement_positive", refs::kLemma11, agree, residual,
                                std::min(left.margin, right.margin), tol.psd_tol, std::move(note));
}

Report extremality_probe(const CMatrix& p, SymmetryFamily family, int samples, std::uint64_t seed,
                         const ToleranceConfig& tol)
{
    if (family == SymmetryFamily::JProjection)
        throw Error(ErrorCode::InvalidArgument, "extremality_probe: JProjection has no extremes in general");
    const bool positive = family == SymmetryFamily::JPositive;
    const ExtremalKind min_kind = positive ? ExtremalKind::PosMin : ExtremalKind::ContrMin;
    const ExtremalKind max_kind = positive ? ExtremalKind::PosMax : ExtremalKind::ContrMax;
    const char* min_ref = positive ? refs::kLemma4 : refs::kTheorem7i;
    const char* max_ref = positive ? refs::kTheorem8i : refs::kTheorem7ii;
    const char* family_ref = positive ? refs::kLemma3 : refs::kLemma5;

    const BlockForm bf = block_form(p, tol);
    const CMatrix j_min = extremal_symmetry(p, min_kind, tol);
    const CMatrix j_max = extremal_symmetry(p, max_kind, tol);

    Report rep;
    rep.config = tol;
    rep.seed = seed;
    rep.subject = make_subject(p, std::nullopt, tol);

    const double res_t = tol.residual_tol;
    rep.add(CheckResult::residual_check("min.symmetry", min_ref, symmetry_residual(j_min), res_t));
    rep.add(CheckResult::residual_check("max.symmetry", max_ref, symmetry_residual(j_max), res_t));
    rep.add(admissibility("min.admissible", min_ref, p, j_min, family, tol));
    rep.add(admissibility("max.admissible", max_ref, p, j_max, family, tol));

    if (samples <= 0) return rep;
    const std::vector<SymmetryParams> params = sample_params(bf, family, samples, seed, tol);
    for (int i = 0; i < samples; ++i) {
        const CMatrix j = assemble_symmetry(bf, family, params[static_cast<std::size_t>(i)], tol);
        rep.add(admissibility(draw_name(i, "admissible"), family_ref, p, j, family, tol));
        rep.add(CheckResult::margin_check(draw_name(i, "above_min"), min_ref, loewner_geq(j, j_min, tol).margin,
                                          tol.psd_tol));
        rep.add(CheckResult::margin_check(draw_name(i, "below_max"), max_ref, loewner_geq(j_max, j, tol).margin,
                                          tol.psd_tol));
    }
    return rep;
}

Report split_report(const CMatrix& p, const CMatrix& j, const SplitResult& split, const ToleranceConfig& tol)
{
    const Eigen::Index n = p.rows();
    const CMatrix id = identity(n);
    const double t = tol.residual_tol * tolerance_scale(p);
    const CMatrix& a = split.e1;
    const CMatrix& b = split.e2;

    Report rep;
    rep.config = tol;
    rep.subject = make_subject(p, j, tol);
    auto res = [&rep, t](const char* name, const char* ref, double r) {
        rep.add(CheckResult::residual_check(name, ref, r, t));
    };
    auto psd = [&rep, &tol](const char* name, const char* ref, const CMatrix& m, const char* what) {
        const PsdTest s = psd_test(m, tol);
        rep.add(CheckResult::verdict(name, ref, s.holds, s.hermitian_residual, s.margin, tol.psd_tol, what));
    };

    if (split.kind == SplitKind::ContractiveExpansive) {
        const char* ref = refs::kCorollary14;
        res("e1_idempotent", ref, (a * a - a).norm());
        res("e2_idempotent", ref, (b * b - b).norm());
        res("e1e2_is_p", ref, (a * b - p).norm());
        res("e2e1_is_p", ref, (b * a - p).norm());
        res("e1_plus_e2_minus_i_is_p", ref, (a + b - id - p).norm());
        res("e1e2adj_identity", ref, (a * b.adjoint() - (a + b.adjoint() - id)).norm());
        res("e2adje1_identity", ref, (b.adjoint() * a - (a + b.adjoint() - id)).norm());
        const ContractivityTest contr = contractivity_test(a, j, false, tol);
        rep.add(CheckResult::verdict("e1_j_contractive", ref, contr.holds, contr.coupling, contr.margin, tol.psd_tol,
                                     "E1*JE1 <= J"));
        const ContractivityTest expan = contractivity_test(b, j, true, tol);
        rep.add(CheckResult::verdict("e2_j_expansive", ref, expan.holds, expan.coupling, expan.margin, tol.psd_tol,
                                     "E2*JE2 >= J"));
        psd("e1_complement_positive", refs::kLemma11, j * (id - a), "J(I-E1) >= 0");
        psd("e2_complement_negative", refs::kLemma11, -j * (id - b), "J(I-E2) <= 0");
    } else {
        const char* ref = refs::kLemma13;
        res("q_idempotent", ref, (a * a - a).norm());
        res("r_idempotent", ref, (b * b - b).norm());
        res("q_plus_r_is_p", ref, (a + b - p).norm());
        res("qr_zero", ref, (a * b).norm());
        res("rq_zero", ref, (b * a).norm());
        res("qradj_zero", ref, (a * b.adjoint()).norm());
        res("radjq_zero", ref, (b.adjoint() * a).norm());
        psd("q_j_positive", ref, j * a, "JQ >= 0");
        psd("r_j_negative", ref, -j * b, "JR <= 0");
    }
    return rep;
}

namespace {

// Runs one section; a library error becomes a failing check instead of
// aborting the report.
void guarded(Report& rep, const std::string& name, const char* ref, const std::function<void()>& body)
{
    try {
        body();
    } catch (const Error& e) {
        rep.add(CheckResult::verdict(name, ref, false, 0.0, 0.0, 0.0, e.what()));
    }
}

void skip_j_sections(Report& rep, const std::string& reason)
{
    rep.add(CheckResult::skipped("j.classify", refs::kDefinitions, reason));
    rep.add(CheckResult::skipped("j.lemma11", refs::kLemma11, reason));
    rep.add(CheckResult::skipped("j.contractive_expansive_split", refs::kCorollary14, reason));
    rep.add(CheckResult::skipped("j.positive_negative_split", refs::kLemma13, reason));
    rep.add(CheckResult::skipped("j.witnesses", refs::kTheorem8ii, reason));
}

void skip_p_sections(Report& rep, const std::string& reason)
{
    for (const char* name : {"block_form", "kernels", "negative_part", "extremal", "remark", "probe.positive",
                             "probe.contractive", "complement", "intertwining", "adjoint_similarity",
                             "complement_equivalence"})
        rep.add(CheckResult::skipped(name, refs::kArtifact, reason));
}

void add_p_sections(Report& rep, const CMatrix& p, const ToleranceConfig& tol, int samples, std::uint64_t seed)
{
    const Eigen::Index n = p.rows();
    const CMatrix id = identity(n);
    const double t = tol.residual_tol * tolerance_scale(p);
    auto res = [&rep](std::string name, const char* ref, double r, double bound) {
        rep.add(CheckResult::residual_check(std::move(name), ref, r, bound));
    };

    guarded(rep, "block_form", refs::kBlockForm, [&] {
        const BlockForm bf = block_form(p, tol);
        res("block_form.round_trip", refs::kBlockForm, (bf.reassemble() - p).norm(), t);
        const CMatrix w = bf.unitary();
        res("block_form.unitary", refs::kBlockForm, (w.adjoint() * w - id).norm(), tol.residual_tol);
    });

    guarded(rep, "kernels", refs::kLemma6i, [&] {
        const KernelProjectionRoutes k = kernel_projection_routes(p, tol);
        res("kernels.sum", refs::kLemma6i, (k.sum_direct - k.sum_block).norm(), t);
        res("kernels.difference", refs::kLemma6ii, (k.diff_direct - k.diff_block).norm(), t);
    });

    guarded(rep, "negative_part", refs::kLemma1, [&] {
        const BlockForm bf = block_form(p, tol);
        const CMatrix s = bordered_matrix(bf.p1);
        res("negative_part.corner", refs::kLemma1,
            (negative_part_projection_closed_form(bf.p1, tol) - spectral_parts(s, tol).p_minus).norm(),
            tol.residual_tol * tolerance_scale(s));
        const CMatrix from_sum = bf.to_block(spectral_parts(p + p.adjoint(), tol).p_minus);
        res("negative_part.half_corner", refs::kLemma1Scaled,
            (negative_part_projection_closed_form(bf.p1 / 2.0, tol) - from_sum).norm(), t);
    });

    guarded(rep, "extremal", refs::kTheorem7i, [&] {
        struct Item {
            ExtremalKind kind;
            const char* ref;
        };
        const Item items[] = {{ExtremalKind::PosMin, refs::kLemma4},
                              {ExtremalKind::PosMax, refs::kTheorem8i},
                              {ExtremalKind::ContrMin, refs::kTheorem7i},
                              {ExtremalKind::ContrMax, refs::kTheorem7ii}};
        for (const Item& it : items) {
            const std::string base = "extremal." + std::string(to_string(it.kind));
            const CMatrix j = extremal_symmetry(p, it.kind, tol);
            res(base + ".symmetry", it.ref, symmetry_residual(j), tol.residual_tol);
            rep.add(admissibility(base + ".admissible", it.ref, p, j, family_of(it.kind), tol));
            res(base + ".block_route", it.ref, (j - extremal_symmetry_from_blocks(p, it.kind, tol)).norm(),
                tol.residual_tol);
        }
        const SpectralParts sp = spectral_parts(p + p.adjoint(), tol);
        res("identity_web.pos_min", refs::kLemma4,
            (extremal_symmetry(p, ExtremalKind::PosMin, tol) - (sp.p_plus - sp.p_minus - sp.p_ker)).norm(),
            tol.residual_tol);
        res("identity_web.pos_max", refs::kTheorem8i,
            (extremal_symmetry(p, ExtremalKind::PosMax, tol) - (sp.p_plus - sp.p_minus + sp.p_ker)).norm(),
            tol.residual_tol);
        res("identity_web.contr_min", refs::kTheorem7i,
            (extremal_symmetry(p, ExtremalKind::ContrMin, tol) - (sp.p_minus - sp.p_plus + sp.p_ker)).norm(),
            tol.residual_tol);
        if ((p - p.adjoint()).norm() <= t) {
            res("orthogonal.pos_max_is_identity", refs::kTheorem8i,
                (extremal_symmetry(p, ExtremalKind::PosMax, tol) - id).norm(), tol.residual_tol);
            res("orthogonal.contr_max_is_identity", refs::kTheorem7ii,
                (extremal_symmetry(p, ExtremalKind::ContrMax, tol) - id).norm(), tol.residual_tol);
        }
    });

    try {
        const CMatrix sign = shift_sign(p, tol);
        const CMatrix ker = spectral_parts(p + p.adjoint(), tol).p_ker;
        res("remark.sign_formula", refs::kRemark,
            (sign + 2.0 * ker - extremal_symmetry(p, ExtremalKind::PosMax, tol)).norm(), tol.residual_tol);
        res("remark.kernel_action", refs::kRemark, (sign * ker + ker).norm(), tol.residual_tol);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularShift)
            rep.add(CheckResult::skipped("remark", refs::kRemark, e.what()));
        else
            rep.add(CheckResult::verdict("remark", refs::kRemark, false, 0.0, 0.0, 0.0, e.what()));
    }

    guarded(rep, "probe.positive", refs::kTheorem8i, [&] {
        rep.append(extremality_probe(p, SymmetryFamily::JPositive, samples, seed, tol), "probe.positive.");
    });
    guarded(rep, "probe.contractive", refs::kTheorem7ii, [&] {
        rep.append(extremality_probe(p, SymmetryFamily::JContractive, samples, seed, tol), "probe.contractive.");
    });

    guarded(rep, "complement", refs::kTheorem12i,
            [&] { rep.append(complement_projection_identities(p, tol), "complement."); });

    guarded(rep, "intertwining", refs::kProposition9, [&] {
        const Intertwining it = intertwining_unitaries(p, tol);
        res("intertwining.residual", refs::kProposition9, it.residual, t);
        res("intertwining.u1_unitary", refs::kProposition9,
            (it.u1.adjoint() * it.u1 - identity(it.u1.cols())).norm(), tol.residual_tol);
        res("intertwining.v1_unitary", refs::kProposition9,
            (it.v1.adjoint() * it.v1 - identity(it.v1.cols())).norm(), tol.residual_tol);
        const RVector sp = fundamental_subspaces(it.form_p.p1, tol).singular_values;
        const RVector sq = fundamental_subspaces(it.form_q.p1, tol).singular_values;
        const double gap = sp.size() == 0 ? 0.0 : (sp - sq).cwiseAbs().maxCoeff();
        res("intertwining.corner_singular_values", refs::kProposition9, gap, t);
    });

    guarded(rep, "adjoint_similarity", refs::kCorollary10i, [&] {
        const Similarity s = adjoint_similarity(p, tol);
        res("adjoint_similarity.residual", refs::kCorollary10i, s.residual, t);
        res("adjoint_similarity.unitary", refs::kCorollary10i, (s.u.adjoint() * s.u - id).norm(), tol.residual_tol);
    });

    guarded(rep, "complement_equivalence", refs::kCorollary10iii, [&] {
        const Similarity s = complement_equivalence(p, tol);
        res("complement_equivalence.residual", refs::kCorollary10iii, s.residual, t);
        res("complement_equivalence.spectra", refs::kCorollary10iii, s.spectrum_gap, t);
        res("complement_equivalence.unitary", refs::kCorollary10iii, (s.u.adjoint() * s.u - id).norm(),
            tol.residual_tol);
    });
}

void add_j_sections(Report& rep, const CMatrix& p, const CMatrix& j, const ToleranceConfig& tol)
{
    const Eigen::Index n = p.rows();
    const CMatrix id = identity(n);
    const double t = tol.residual_tol * tolerance_scale(p);

    guarded(rep, "j.classify", refs::kDefinitions, [&] {
        const Classification c = classify(p, j, tol);
        rep.add(CheckResult::residual_check("j.classify.j_projection", refs::kDefinitions, c.projection_residual, t));
        const Classification cq = classify(id - p, j, tol);
        rep.add(CheckResult::verdict("j.classify.contractive_iff_complement_positive", refs::kLemma11,
                                     c.j_contractive == cq.j_positive, 0.0,
                                     std::min(c.contractive_margin, cq.positive_margin), tol.psd_tol));
    });

    guarded(rep, "j.lemma11", refs::kLemma11, [&] {
        CheckResult c = lemma11_check(p, j, tol);
        c.name = "j.lemma11." + c.name;
        rep.add(std::move(c));
    });

    guarded(rep, "j.contractive_expansive_split", refs::kCorollary14, [&] {
        const SplitResult split = contractive_expansive_split(p, j, tol);
        rep.append(split_report(p, j, split, tol), "j.contractive_expansive.");
        // The split of P is determined by the positive/negative split of I - P.
        const SplitResult via = positive_negative_split(id - p, j, tol);
        rep.add(CheckResult::residual_check("j.contractive_expansive.unique_e1", refs::kCorollary14,
                                            (split.e1 - (id - via.e1)).norm(), t));
        rep.add(CheckResult::residual_check("j.contractive_expansive.unique_e2", refs::kCorollary14,
                                            (split.e2 - (id - via.e2)).norm(), t));
    });

    guarded(rep, "j.positive_negative_split", refs::kLemma13, [&] {
        const SplitResult split = positive_negative_split(p, j, tol);
        rep.append(split_report(p, j, split, tol), "j.positive_negative.");
    });

    guarded(rep, "j.witnesses", refs::kTheorem8ii, [&] {
        const Witnesses w = nonexistence_witnesses(p, tol);
        rep.add(CheckResult::residual_check("j.witnesses.a_is_j_projection", refs::kTheorem8ii,
                                            (w.j_a * p * w.j_a - p.adjoint()).norm(), t));
        rep.add(CheckResult::residual_check("j.witnesses.b_is_j_projection", refs::kTheorem8ii,
                                            (w.j_b * p * w.j_b - p.adjoint()).norm(), t));
        const DominanceReport& d = w.dominance;
        if (d.corner_nonzero) {
            rep.add(CheckResult::verdict("j.witnesses.difference_indefinite", refs::kTheorem8ii,
                                         d.kind == Definiteness::Indefinite, 0.0,
                                         std::min(-d.min_eigenvalue, d.max_eigenvalue), tol.psd_tol,
                                         std::string(to_string(d.kind))));
        } else {
            rep.add(CheckResult::residual_check("j.witnesses.identity_is_maximum", refs::kTheorem8ii,
                                                (p - p.adjoint()).norm(), t, "P orthogonal"));
        }
    });
}

}  // namespace

Report full_report(const CMatrix& p, const std::optional<CMatrix>& j, const ToleranceConfig& tol, int samples,
                   std::uint64_t seed)
{
    tol.validate();
    Report rep;
    rep.config = tol;
    rep.seed = seed;

    if (p.rows() != p.cols() || !p.allFinite()) {
        rep.subject = {p.rows(), 0, matrix_hash(p), std::nullopt, {}};
        rep.add(CheckResult::verdict("idempotent", refs::kIdempotent, false, 0.0, 0.0, tol.residual_tol,
                                     "P must be a finite square matrix"));
        skip_p_sections(rep, "P is not a finite square matrix");
        skip_j_sections(rep, "P is not a finite square matrix");
        return rep;
    }

    rep.subject = make_subject(p, j, tol);
    const double t = tol.residual_tol * tolerance_scale(p);
    const CheckResult idem = CheckResult::residual_check("idempotent", refs::kIdempotent, (p * p - p).norm(), t);
    const bool idempotent = idem.passed();
    rep.add(idem);

    if (!idempotent) {
        skip_p_sections(rep, "P is not idempotent");
        skip_j_sections(rep, "P is not idempotent");
        return rep;
    }
    add_p_sections(rep, p, tol, samples, seed);

    if (!j) {
        skip_j_sections(rep, "no J supplied");
        return rep;
    }
    const CMatrix& jm = *j;
    if (jm.rows() != p.rows() || jm.cols() != p.cols() || !jm.allFinite() || !is_symmetry(jm, tol)) {
        skip_j_sections(rep, "J is not a symmetry of matching size");
        return rep;
    }
    if ((jm * p * jm - p.adjoint()).norm() > t) {
        skip_j_sections(rep, "JPJ≠P*");
        return rep;
    }
    add_j_sections(rep, p, jm, tol);
    return rep;
}

}  // namespace kproj
