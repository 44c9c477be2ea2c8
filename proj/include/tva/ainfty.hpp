#pragma once

#include "tva/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tva::ainfty {

/// Basis labels with integer degrees. Labels are unique; index order is the
/// declaration order and fixes tuple enumeration everywhere.
class GradedSpace {
public:
    int add_label(const std::string& name, int degree);
    int index_of(const std::string& name) const;
    const std::string& name(int i) const { return names_.at(static_cast<size_t>(i)); }
    int degree(int i) const { return degrees_.at(static_cast<size_t>(i)); }
    int parity(int i) const { return ((degree(i) % 2) + 2) % 2; }
    int dim() const { return static_cast<int>(names_.size()); }

private:
    std::vector<std::string> names_;
    std::vector<int> degrees_;
    std::map<std::string, int> index_;
};

/// Sparse element of V: label index -> coefficient, no zeros stored.
struct Element {
    std::map<int, Rat> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    void add(int label, const Rat& c);
    Element& operator+=(const Element& o);
    Element& scale(const Rat& s);
    bool operator==(const Element&) const = default;
    std::string str(const GradedSpace& V) const;
};

using Tuple = std::vector<int>;

/// Linear combination of basis tensors of V (mixed tensor degrees allowed).
struct TensorElem {
    std::map<Tuple, Rat> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    void add(const Tuple& t, const Rat& c);
    TensorElem& operator+=(const TensorElem& o);
    std::string str(const GradedSpace& V) const;
};

/// Multilinear operation V^{⊗n} -> V of fixed integer degree, stored sparsely.
/// Degree homogeneity of every entry is asserted at insertion time.
class MultiOp {
public:
    MultiOp(const GradedSpace& V, int arity, int degree)
        : space_(&V), arity_(arity), degree_(degree) {
        if (arity < 1) throw TvaError("MultiOp: arity must be >= 1");
    }

    int arity() const { return arity_; }
    int degree() const { return degree_; }

    void set(const Tuple& in, const Element& out);
    Element apply(const Tuple& in) const;
    const std::map<Tuple, Element>& entries() const { return entries_; }

private:
    const GradedSpace* space_;
    int arity_;
    int degree_;
    std::map<Tuple, Element> entries_;
};

enum class SignConvention { paper, koszul };

inline std::string convention_name(SignConvention c) {
    return c == SignConvention::paper ? "paper" : "koszul";
}

/// Collection mu_1..mu_{n_max} of degree 2-n operations; mu_1 plays the role
/// of the differential. Absent arities are zero.
struct AInfStructure {
    GradedSpace space;
    std::map<int, MultiOp> ops; // arity -> op
    SignConvention convention = SignConvention::koszul;
    int n_max = 0;

    void set_op(MultiOp op);
    const MultiOp* op(int arity) const;
    /// Checks mu_1∘mu_1 = 0 and the degree of every stored op.
    void validate() const;
};

/// Koszul sign of permuting graded objects: -1 per crossing of two odd
/// entries. perm[i] is the destination slot of input slot i.
Rat koszul_sign(const std::vector<int>& degrees, const std::vector<int>& perm);

/// One summand 1^{⊗l} ⊗ mu ⊗ 1^{⊗(m-s-l)} of M_s acting on V^{⊗m}.
struct BlockOp {
    const MultiOp* mu;
    int l = 0;
    int m = 0;
    SignConvention convention = SignConvention::paper;

    /// Literal coefficient (-1)^{l(s+1)} used in the paper convention.
    Rat paper_coeff() const;
    /// Applies to a basis tuple of length m; the koszul convention charges
    /// (-1)^{deg(mu) * sum of degrees crossed} instead of the literal sign.
    TensorElem apply(const GradedSpace& V, const Tuple& in) const;
};

BlockOp block_insert(const MultiOp& mu, int l, int m, SignConvention conv);

struct RelationViolation {
    int n = 0;
    Tuple inputs;
    Element residual;
};

struct RelationReport {
    int n = 0;
    SignConvention convention = SignConvention::koszul;
    std::vector<RelationViolation> violations;
    bool ok() const { return violations.empty(); }
    std::string str(const GradedSpace& V) const;
};

/// Residual of the n-th A-infinity relation evaluated on every basis n-tuple.
/// In the koszul convention this is the V-landing component of the squared bar
/// differential transported back through the (de)suspension.
RelationReport check_relations(const AInfStructure& A, int n);
RelationReport check_relations(const AInfStructure& A, int n, SignConvention conv);

/// Desuspended operations: shifted grading |s^{-1}a| = |a|-1 and
/// tmu_n(s a...) = (-1)^{s(a)} s mu_n(a...), each of degree 1.
struct Desuspended {
    GradedSpace space; // same labels, degrees shifted down by one
    std::map<int, MultiOp> ops;
};

Desuspended desuspend(const AInfStructure& A);

/// Sign (-1)^{s(a)} with s(a) = (1-n)|a_1| + (2-n)|a_2| + ... + |a_{n-1}|,
/// degrees taken in the unshifted grading.
Rat desuspension_sign(const std::vector<int>& degrees);

struct BarViolation {
    Tuple inputs; // basis tensor, length <= N
    TensorElem residual;
};

struct BarReport {
    int max_tensor_degree = 0;
    std::vector<BarViolation> violations;
    bool ok() const { return violations.empty(); }
    std::string str(const GradedSpace& V) const;
};

/// Applies the bar differential ∂ = Σ M̃_n twice to every basis tensor of
/// length <= N and reports every nonzero image.
BarReport bar_square_residual(const AInfStructure& A, int N);

/// Test fixtures: dga-lambda, mu3-only, nonassoc-counterexample.
AInfStructure builtin_structure(const std::string& name);
std::vector<std::string> builtin_structure_names();

/// Text serialization; the exact format is documented in docs/formats.md.
std::string to_text(const AInfStructure& A);
AInfStructure from_text(const std::string& text);

} // namespace tva::ainfty
