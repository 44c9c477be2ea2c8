#include "tva/ainfty.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace tva::ainfty {

int GradedSpace::add_label(const std::string& name, int degree) {
    if (index_.count(name)) throw TvaError("GradedSpace: duplicate label '" + name + "'");
    int id = static_cast<int>(names_.size());
    names_.push_back(name);
    degrees_.push_back(degree);
    index_[name] = id;
    return id;
}

int GradedSpace::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw TvaError("GradedSpace: unknown label '" + name + "'");
    return it->second;
}

void Element::add(int label, const Rat& c) {
    if (c == 0) return;
    auto it = coeffs.find(label);
    if (it == coeffs.end()) {
        coeffs.emplace(label, c);
    } else {
        it->second += c;
        if (it->second == 0) coeffs.erase(it);
    }
}

Element& Element::operator+=(const Element& o) {
    for (const auto& [l, c] : o.coeffs) add(l, c);
    return *this;
}

Element& Element::scale(const Rat& s) {
    if (s == 0) {
        coeffs.clear();
        return *this;
    }
    for (auto& [l, c] : coeffs) c *= s;
    return *this;
}

std::string Element::str(const GradedSpace& V) const {
    if (coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [l, c] : coeffs) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(c) << "*" << V.name(l);
    }
    return os.str();
}

void TensorElem::add(const Tuple& t, const Rat& c) {
    if (c == 0) return;
    auto it = coeffs.find(t);
    if (it == coeffs.end()) {
        coeffs.emplace(t, c);
    } else {
        it->second += c;
        if (it->second == 0) coeffs.erase(it);
    }
}

TensorElem& TensorElem::operator+=(const TensorElem& o) {
    for (const auto& [t, c] : o.coeffs) add(t, c);
    return *this;
}

std::string TensorElem::str(const GradedSpace& V) const {
    if (coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : coeffs) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(c) << "*(";
        for (size_t i = 0; i < t.size(); ++i) {
            if (i) os << "(x)";
            os << V.name(t[i]);
        }
        os << ")";
    }
    return os.str();
}

void MultiOp::set(const Tuple& in, const Element& out) {
    if (static_cast<int>(in.size()) != arity_) throw TvaError("MultiOp::set: arity mismatch");
    int in_deg = 0;
    for (int l : in) in_deg += space_->degree(l);
    for (const auto& [l, c] : out.coeffs) {
        if (space_->degree(l) != in_deg + degree_)
            throw TvaError("MultiOp::set: entry violates degree bookkeeping at label '" +
                           space_->name(l) + "'");
    }
    if (out.is_zero()) {
        entries_.erase(in);
    } else {
        entries_[in] = out;
    }
}

Element MultiOp::apply(const Tuple& in) const {
    auto it = entries_.find(in);
    if (it == entries_.end()) return {};
    return it->second;
}

void AInfStructure::set_op(MultiOp op) {
    int n = op.arity();
    if (op.degree() != 2 - n)
        throw TvaError("AInfStructure: mu_" + std::to_string(n) + " must have degree " +
                       std::to_string(2 - n));
    n_max = std::max(n_max, n);
    ops.erase(n);
    ops.emplace(n, std::move(op));
}

const MultiOp* AInfStructure::op(int arity) const {
    auto it = ops.find(arity);
    return it == ops.end() ? nullptr : &it->second;
}

void AInfStructure::validate() const {
    const MultiOp* q = op(1);
    if (!q) return;
    for (int l = 0; l < space.dim(); ++l) {
        Element ql = q->apply({l});
        Element qql;
        for (const auto& [m, c] : ql.coeffs) {
            Element t = q->apply({m});
            t.scale(c);
            qql += t;
        }
        if (!qql.is_zero())
            throw TvaError("AInfStructure: mu_1 does not square to zero on '" + space.name(l) + "'");
    }
}

Rat koszul_sign(const std::vector<int>& degrees, const std::vector<int>& perm) {
    if (degrees.size() != perm.size()) throw TvaError("koszul_sign: length mismatch");
    size_t n = perm.size();
    std::vector<char> seen(n, 0);
    for (int p : perm) {
        if (p < 0 || static_cast<size_t>(p) >= n || seen[static_cast<size_t>(p)])
            throw TvaError("koszul_sign: not a permutation");
        seen[static_cast<size_t>(p)] = 1;
    }
    long crossings = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (perm[i] > perm[j] && (degrees[i] % 2) != 0 && (degrees[j] % 2) != 0) ++crossings;
    return (crossings % 2) ? Rat(-1) : Rat(1);
}

Rat BlockOp::paper_coeff() const {
    long s = mu->arity();
    long e = static_cast<long>(l) * (s + 1);
    return (e % 2) ? Rat(-1) : Rat(1);
}

TensorElem BlockOp::apply(const GradedSpace& V, const Tuple& in) const {
    if (static_cast<int>(in.size()) != m) throw TvaError("BlockOp::apply: tuple length mismatch");
    int s = mu->arity();
    Rat sign(1);
    if (convention == SignConvention::paper) {
        sign = paper_coeff();
    } else {
        long crossed = 0;
        for (int j = 0; j < l; ++j) crossed += V.degree(in[static_cast<size_t>(j)]);
        long e = static_cast<long>(mu->degree()) * crossed;
        sign = (((e % 2) + 2) % 2) ? Rat(-1) : Rat(1);
    }
    Tuple mid(in.begin() + l, in.begin() + l + s);
    Element out = mu->apply(mid);
    TensorElem r;
    for (const auto& [b, c] : out.coeffs) {
        Tuple t;
        t.reserve(static_cast<size_t>(m - s + 1));
        t.insert(t.end(), in.begin(), in.begin() + l);
        t.push_back(b);
        t.insert(t.end(), in.begin() + l + s, in.end());
        r.add(t, sign * c);
    }
    return r;
}

BlockOp block_insert(const MultiOp& mu, int l, int m, SignConvention conv) {
    if (l < 0 || l > m - mu.arity())
        throw TvaError("block_insert: position l out of range");
    return BlockOp{&mu, l, m, conv};
}

Rat desuspension_sign(const std::vector<int>& degrees) {
    long n = static_cast<long>(degrees.size());
    long e = 0;
    for (long j = 1; j <= n - 1; ++j) e += (j - n) * degrees[static_cast<size_t>(j - 1)];
    return (((e % 2) + 2) % 2) ? Rat(-1) : Rat(1);
}

namespace {

void enumerate_tuples(int dim, int len, const std::function<void(const Tuple&)>& f) {
    Tuple t(static_cast<size_t>(len), 0);
    while (true) {
        f(t);
        int i = len - 1;
        while (i >= 0 && t[static_cast<size_t>(i)] == dim - 1) {
            t[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++t[static_cast<size_t>(i)];
    }
}

Element relation_residual_paper(const AInfStructure& A, int n, const Tuple& in) {
    Element r;
    for (int i = 1; i <= n; ++i) {
        int s = n - i + 1;
        const MultiOp* outer = A.op(i);
        const MultiOp* inner = A.op(s);
        if (!outer || !inner) continue;
        Rat outer_sign = (i % 2) ? Rat(-1) : Rat(1);
        for (int l = 0; l + s <= n && l <= i - 1; ++l) {
            Rat block = block_insert(*inner, l, n, SignConvention::paper).paper_coeff();
            Tuple mid(in.begin() + l, in.begin() + l + s);
            Element b = inner->apply(mid);
            for (const auto& [lab, c] : b.coeffs) {
                Tuple outer_in;
                outer_in.insert(outer_in.end(), in.begin(), in.begin() + l);
                outer_in.push_back(lab);
                outer_in.insert(outer_in.end(), in.begin() + l + s, in.end());
                Element v = outer->apply(outer_in);
                v.scale(outer_sign * block * c);
                r += v;
            }
        }
    }
    return r;
}

Element relation_residual_koszul(const AInfStructure& A, int n, const Tuple& in) {
    const GradedSpace& V = A.space;
    Element r;
    for (int i = 1; i <= n; ++i) {
        int s = n - i + 1;
        const MultiOp* outer = A.op(i);
        const MultiOp* inner = A.op(s);
        if (!outer || !inner) continue;
        for (int l = 0; l + s <= n && l <= i - 1; ++l) {
            // tmu_s crosses the first l inputs; it has (shifted) degree 1.
            long crossed = 0;
            for (int j = 0; j < l; ++j) crossed += V.degree(in[static_cast<size_t>(j)]) - 1;
            Rat pass = (((crossed % 2) + 2) % 2) ? Rat(-1) : Rat(1);

            Tuple mid(in.begin() + l, in.begin() + l + s);
            std::vector<int> mid_degs;
            for (int lab : mid) mid_degs.push_back(V.degree(lab));
            Rat inner_sign = desuspension_sign(mid_degs);

            Element b = inner->apply(mid);
            for (const auto& [lab, c] : b.coeffs) {
                Tuple outer_in;
                outer_in.insert(outer_in.end(), in.begin(), in.begin() + l);
                outer_in.push_back(lab);
                outer_in.insert(outer_in.end(), in.begin() + l + s, in.end());
                std::vector<int> outer_degs;
                for (int ol : outer_in) outer_degs.push_back(V.degree(ol));
                Rat outer_sign = desuspension_sign(outer_degs);
                Element v = outer->apply(outer_in);
                v.scale(pass * inner_sign * outer_sign * c);
                r += v;
            }
        }
    }
    return r;
}

} // namespace

RelationReport check_relations(const AInfStructure& A, int n) {
    return check_relations(A, n, A.convention);
}

RelationReport check_relations(const AInfStructure& A, int n, SignConvention conv) {
    if (n < 2) throw TvaError("check_relations: n must be >= 2");
    RelationReport rep;
    rep.n = n;
    rep.convention = conv;
    enumerate_tuples(A.space.dim(), n, [&](const Tuple& in) {
        Element r = conv == SignConvention::paper ? relation_residual_paper(A, n, in)
                                                  : relation_residual_koszul(A, n, in);
        if (!r.is_zero()) rep.violations.push_back({n, in, std::move(r)});
    });
    return rep;
}

std::string RelationReport::str(const GradedSpace& V) const {
    std::ostringstream os;
    os << "relation n=" << n << " [" << convention_name(convention) << "]: ";
    if (ok()) {
        os << "zero residual";
        return os.str();
    }
    os << violations.size() << " nonzero residual(s)";
    for (const auto& v : violations) {
        os << "\n  (";
        for (size_t i = 0; i < v.inputs.size(); ++i) {
            if (i) os << ",";
            os << V.name(v.inputs[i]);
        }
        os << ") -> " << v.residual.str(V);
    }
    return os.str();
}

Desuspended desuspend(const AInfStructure& A) {
    Desuspended d;
    for (int i = 0; i < A.space.dim(); ++i)
        d.space.add_label(A.space.name(i), A.space.degree(i) - 1);
    for (const auto& [n, mu] : A.ops) {
        MultiOp t(d.space, n, 1);
        for (const auto& [in, out] : mu.entries()) {
            std::vector<int> degs;
            for (int l : in) degs.push_back(A.space.degree(l));
            Element scaled = out;
            scaled.scale(desuspension_sign(degs));
            t.set(in, scaled);
        }
        d.ops.emplace(n, std::move(t));
    }
    return d;
}

namespace {

/// Bar differential applied to one basis tensor of the desuspended structure.
TensorElem bar_diff(const AInfStructure& A, const Desuspended& d, const Tuple& x) {
    const GradedSpace& S = d.space;
    int m = static_cast<int>(x.size());
    TensorElem r;
    for (const auto& [s, tmu] : d.ops) {
        for (int l = 0; l + s <= m; ++l) {
            long crossed = 0;
            for (int j = 0; j < l; ++j) crossed += S.degree(x[static_cast<size_t>(j)]);
            Rat pass = (((crossed % 2) + 2) % 2) ? Rat(-1) : Rat(1);
            Tuple mid(x.begin() + l, x.begin() + l + s);
            Element b = tmu.apply(mid);
            for (const auto& [lab, c] : b.coeffs) {
                Tuple t;
                t.insert(t.end(), x.begin(), x.begin() + l);
                t.push_back(lab);
                t.insert(t.end(), x.begin() + l + s, x.end());
                r.add(t, pass * c);
            }
        }
    }
    (void)A;
    return r;
}

} // namespace

BarReport bar_square_residual(const AInfStructure& A, int N) {
    if (N < 2) throw TvaError("bar_square_residual: N must be >= 2");
    Desuspended d = desuspend(A);
    BarReport rep;
    rep.max_tensor_degree = N;
    for (int len = 1; len <= N; ++len) {
        enumerate_tuples(A.space.dim(), len, [&](const Tuple& x) {
            TensorElem dx = bar_diff(A, d, x);
            TensorElem ddx;
            for (const auto& [t, c] : dx.coeffs) {
                TensorElem dt = bar_diff(A, d, t);
                for (auto& [u, cu] : dt.coeffs) ddx.add(u, c * cu);
            }
            if (!ddx.is_zero()) rep.violations.push_back({x, std::move(ddx)});
        });
    }
    return rep;
}

std::string BarReport::str(const GradedSpace& V) const {
    std::ostringstream os;
    os << "bar square to tensor degree " << max_tensor_degree << ": ";
    if (ok()) {
        os << "zero residual";
        return os.str();
    }
    os << violations.size() << " nonzero residual(s)";
    for (const auto& v : violations) {
        os << "\n  (";
        for (size_t i = 0; i < v.inputs.size(); ++i) {
            if (i) os << "(x)";
            os << V.name(v.inputs[i]);
        }
        os << ") -> " << v.residual.str(V);
    }
    return os.str();
}

AInfStructure builtin_structure(const std::string& name) {
    AInfStructure A;
    if (name == "dga-lambda") {
        // Exterior algebra on one odd generator with Q theta = 1. The generator
        // sits in degree -1 so that Q has degree +1.
        int one = A.space.add_label("1", 0);
        int th = A.space.add_label("theta", -1);
        MultiOp q(A.space, 1, 1);
        Element e1;
        e1.add(one, 1);
        q.set({th}, e1);
        MultiOp prod(A.space, 2, 0);
        Element eth;
        eth.add(th, 1);
        prod.set({one, one}, e1);
        prod.set({one, th}, eth);
        prod.set({th, one}, eth);
        A.set_op(std::move(q));
        A.set_op(std::move(prod));
    } else if (name == "mu3-only") {
        int a = A.space.add_label("a", 1);
        int b = A.space.add_label("b", 2);
        MultiOp mu3(A.space, 3, -1);
        Element eb;
        eb.add(b, 1);
        mu3.set({a, a, a}, eb);
        A.set_op(std::move(mu3));
    } else if (name == "nonassoc-counterexample") {
        int e = A.space.add_label("e", 0);
        int f = A.space.add_label("f", 0);
        MultiOp prod(A.space, 2, 0);
        Element ef, ee;
        ef.add(f, 1);
        ee.add(e, 1);
        prod.set({e, e}, ef);
        prod.set({e, f}, ee);
        A.set_op(std::move(prod));
    } else {
        throw TvaError("builtin_structure: unknown name '" + name + "'");
    }
    A.validate();
    return A;
}

std::vector<std::string> builtin_structure_names() {
    return {"dga-lambda", "mu3-only", "nonassoc-counterexample"};
}

std::string to_text(const AInfStructure& A) {
    std::ostringstream os;
    for (int i = 0; i < A.space.dim(); ++i)
        os << "label " << A.space.name(i) << " degree " << A.space.degree(i) << "\n";
    os << "convention " << convention_name(A.convention) << "\n";
    for (const auto& [n, mu] : A.ops) {
        for (const auto& [in, out] : mu.entries()) {
            os << "mu" << n << ": ";
            for (size_t i = 0; i < in.size(); ++i) {
                if (i) os << ",";
                os << A.space.name(in[i]);
            }
            os << " ->";
            for (const auto& [l, c] : out.coeffs)
                os << " " << A.space.name(l) << ":" << rat_num(c).str() << "/" << rat_den(c).str();
            os << "\n";
        }
    }
    return os.str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

AInfStructure from_text(const std::string& text) {
    AInfStructure A;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    struct Pending {
        int n;
        Tuple in;
        std::vector<std::pair<std::string, Rat>> out;
        int lineno;
    };
    std::vector<Pending> pending;
    while (std::getline(is, line)) {
        ++lineno;
        std::string s = strip(line);
        if (s.empty() || s[0] == '#') continue;
        auto err = [&](const std::string& msg) {
            throw TvaError("structure parse error at line " + std::to_string(lineno) + ": " + msg);
        };
        if (s.rfind("label ", 0) == 0) {
            std::istringstream ls(s.substr(6));
            std::string name, kw;
            int deg;
            if (!(ls >> name >> kw >> deg) || kw != "degree") err("expected 'label <name> degree <int>'");
            A.space.add_label(name, deg);
        } else if (s.rfind("convention ", 0) == 0) {
            std::string c = strip(s.substr(11));
            if (c == "paper") A.convention = SignConvention::paper;
            else if (c == "koszul") A.convention = SignConvention::koszul;
            else err("unknown convention '" + c + "'");
        } else if (s.rfind("mu", 0) == 0) {
            size_t colon = s.find(':');
            if (colon == std::string::npos) err("expected ':' in mu line");
            int n = 0;
            try {
                n = std::stoi(s.substr(2, colon - 2));
            } catch (...) {
                err("malformed arity in '" + s.substr(0, colon) + "'");
            }
            if (n < 1) err("arity must be >= 1");
            std::string rest = s.substr(colon + 1);
            size_t arrow = rest.find("->");
            if (arrow == std::string::npos) err("expected '->'");
            Pending p;
            p.n = n;
            p.lineno = lineno;
            for (const auto& tok : split(strip(rest.substr(0, arrow)), ',')) {
                std::string t = strip(tok);
                if (t.empty()) err("empty input label");
                p.in.push_back(A.space.index_of(t));
            }
            if (static_cast<int>(p.in.size()) != n) err("input tuple length does not match arity");
            std::istringstream outs(rest.substr(arrow + 2));
            std::string item;
            while (outs >> item) {
                auto ci = item.rfind(':');
                if (ci == std::string::npos) err("expected '<label>:<num>/<den>'");
                auto v = rat_parse(item.substr(ci + 1));
                if (!v) err("malformed rational '" + item.substr(ci + 1) + "'");
                p.out.emplace_back(item.substr(0, ci), *v);
            }
            pending.push_back(std::move(p));
        } else {
            err("unrecognized line '" + s + "'");
        }
    }
    std::map<int, MultiOp> ops;
    for (const auto& p : pending) {
        auto it = A.ops.find(p.n);
        if (it == A.ops.end()) {
            A.set_op(MultiOp(A.space, p.n, 2 - p.n));
            it = A.ops.find(p.n);
        }
        Element out = it->second.apply(p.in);
        for (const auto& [name, c] : p.out) out.add(A.space.index_of(name), c);
        try {
            it->second.set(p.in, out);
        } catch (const TvaError& e) {
            throw TvaError("structure parse error at line " + std::to_string(p.lineno) + ": " +
                           e.what());
        }
    }
    A.validate();
    return A;
}

} // namespace tva::ainfty
