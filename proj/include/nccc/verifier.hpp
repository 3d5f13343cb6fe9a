#pragma once

#include "nccc/coherent.hpp"
#include "nccc/regions.hpp"

#include <map>
#include <string>

namespace nccc {

enum class CheckStatus { Pass, Fail, Skipped };

std::string to_string(CheckStatus s);
CheckStatus check_status_from_string(const std::string& s);

struct VerificationReport {
    std::string id;
    CheckStatus status = CheckStatus::Pass;
    std::map<std::string, GradedDims> computed;
    std::map<std::string, GradedDims> oracle;
    std::map<std::string, std::string> context;
    std::vector<std::string> notes;
    /// JSON text of the input that reproduces a failure; empty unless the check failed.
    std::string reproducer;

    bool operator==(const VerificationReport&) const = default;
};

/// Which constructible object stands in for O_E(kE).
enum class MirrorObject {
    Literal,  // p_* C_{Z_k}
    Shell,    // p_* C_{Z_k minus Z_{k-1}}
};

std::string to_string(MirrorObject o);
MirrorObject mirror_object_from_string(const std::string& s);

CellularSheaf mirror_object(ComplexPtr cx, const BlowupContext& ctx, int k, MirrorObject o);

/// Ext(F_k, F_k) against ext_orlov(k, k) = (1, 0, ..., 0).
VerificationReport check_exceptionality(const BlowupContext& ctx, ComplexPtr cx, int k, MirrorObject o);
/// Ext(F_l, F_k) against ext_orlov(k, l); k == l delegates to check_exceptionality.
VerificationReport check_semiorthogonality(const BlowupContext& ctx, ComplexPtr cx, int k, int l, MirrorObject o);
/// H(T, C_[0] tensor F_k) against H(P^{n-1}, O(-k)), both zero.
VerificationReport check_unit_orthogonality(const BlowupContext& ctx, ComplexPtr cx, int k, MirrorObject o);
/// Per-cell Cech stalks in the window [-n-1, 1]^n.
VerificationReport check_cech_quasiiso(const BlowupContext& ctx);

struct CorpusItem {
    std::string name;
    CellularSheaf sheaf;
};

/// C_T, C_[0] and the pushforwards of closed and open chambers of the arrangement
/// {<m, v_rho> in Z} of the unblown fan inside [-1, 1]^n.
std::vector<CorpusItem> step1_corpus(const BlowupContext& ctx, ComplexPtr cx);

/// H_c(U_k, E) against H_c(U_{k+1}, E) for every corpus sheaf with SS(E) inside the skeleton of
/// the unblown fan; the others are skipped with a note.
VerificationReport check_step1_restriction(const BlowupContext& ctx, ComplexPtr cx, int k,
                                           const std::vector<CorpusItem>& corpus);

/// MMP trace of a smooth complete surface fan with per-step refinement, rank and blow-up checks.
VerificationReport check_blowup_bookkeeping(const Fan& f);

/// Morse groups of the closed half-line and of a closed quadrant corner equal the dual cone.
VerificationReport check_ss_calibration();

/// Constant sheaf and skyscraper at [0] on the skeleton complex of each fan are inside the skeleton.
VerificationReport check_ss_trivial_sheaves(const std::vector<Fan>& fans);

/// SS(p_* C_{Z_1}) inside the negated skeleton of the blown-up fan (and not inside the skeleton itself
/// unless the fan is centrally symmetric).
VerificationReport check_ss_blowup_object(const BlowupContext& ctx, ComplexPtr cx);

/// Torus complex whose cells are adapted to the strata sigma-perp + M of the fan.
ComplexPtr skeleton_complex(const Fan& f);

/// Sorted by id, then status.
void sort_reports(std::vector<VerificationReport>& reports);
bool all_pass(const std::vector<VerificationReport>& reports);

}  // namespace nccc
