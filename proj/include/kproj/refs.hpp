#pragma once

// Source-result labels carried verbatim in the paper_ref field of every check.

namespace kproj::refs {

inline constexpr const char* kDefinitions = "Section 1 definitions";
inline constexpr const char* kBlockForm = "Eq. (1.1)";
inline constexpr const char* kIdempotent = "Section 1, bounded projections";
inline constexpr const char* kLemma1 = "Lemma 1";
inline constexpr const char* kLemma1Scaled = "Theorem 7 proof, Lemma 1 with T=(I+P1P1*)^(1/2)";
inline constexpr const char* kLemma2 = "Lemma 2";
inline constexpr const char* kLemma3 = "Lemma 3";
inline constexpr const char* kLemma4 = "Lemma 4";
inline constexpr const char* kLemma5 = "Lemma 5";
inline constexpr const char* kLemma6i = "Lemma 6(i)";
inline constexpr const char* kLemma6ii = "Lemma 6(ii)";
inline constexpr const char* kTheorem7i = "Theorem 7(i)";
inline constexpr const char* kTheorem7ii = "Theorem 7(ii)";
inline constexpr const char* kTheorem8i = "Theorem 8(i)";
inline constexpr const char* kTheorem8ii = "Theorem 8(ii)";
inline constexpr const char* kRemark = "Remark after Theorem 8";
inline constexpr const char* kProposition9 = "Proposition 9";
inline constexpr const char* kCorollary10i = "Corollary 10(i)";
inline constexpr const char* kCorollary10iii = "Corollary 10(iii)";
inline constexpr const char* kLemma11 = "Lemma 11";
inline constexpr const char* kTheorem12i = "Theorem 12(i)";
inline constexpr const char* kTheorem12ii = "Theorem 12(ii)";
inline constexpr const char* kTheorem12iii = "Theorem 12(iii)";
inline constexpr const char* kComplementMaxIdentity = "Theorem 12 proof, Eq. (2.28)";
inline constexpr const char* kComplementKernelDifference = "Theorem 12 proof, Eq. (2.29)";
inline constexpr const char* kLemma13 = "Lemma 13";
inline constexpr const char* kCorollary14 = "Corollary 14";
inline constexpr const char* kArtifact = "artifact plumbing";

}  // namespace kproj::refs
