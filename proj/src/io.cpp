#include "vilenkin/io.hpp"

#include <cstdio>
#include <sstream>

#include "vilenkin/errors.hpp"

namespace vilenkin {

namespace {

json complex_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::complex<double> complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw FormatError("expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<int> word_from_json(const json& j) {
    std::vector<int> w;
    for (const auto& v : j) w.push_back(v.get<int>());
    return w;
}

}  // namespace

json tree_to_json(const PTree& tree) {
    json nodes = json::array();
    for (const auto& n : tree.nodes()) {
        json rec;
        rec["id"] = n.id;
        rec["label"] = n.label;
        if (n.parent < 0)
            rec["parent"] = nullptr;
        else
            rec["parent"] = n.parent;
        nodes.push_back(rec);
    }
    json j;
    j["p"] = tree.p();
    j["N"] = tree.N();
    j["nodes"] = nodes;
    return j;
}

PTree tree_from_json(const json& j) {
    if (!j.contains("p") || !j.contains("N") || !j.contains("nodes"))
        throw FormatError("tree: expected keys p, N, nodes");
    std::vector<TreeNode> nodes;
    int root_id = -1;
    for (const auto& rec : j.at("nodes")) {
        TreeNode n;
        n.id = rec.at("id").get<int>();
        n.label = rec.at("label").get<int>();
        n.parent = rec.at("parent").is_null() ? -1 : rec.at("parent").get<int>();
        if (n.parent < 0) root_id = n.id;
        nodes.push_back(n);
    }
    if (root_id < 0) throw FormatError("tree: no root (parent null) found");
    return PTree(j.at("p").get<int>(), j.at("N").get<int>(), nodes, root_id);
}

std::string tree_to_dot(const PTree& tree) {
    std::ostringstream os;
    os << "digraph tree {\n";
    for (const auto& n : tree.nodes())
        os << "  n" << n.id << " [label=\"" << n.label << "\"];\n";
    for (const auto& n : tree.nodes())
        if (n.parent >= 0) os << "  n" << n.parent << " -> n" << n.id << ";\n";
    os << "}\n";
    return os.str();
}

json mask_to_json(const Mask& m) {
    json entries = json::array();
    for (std::size_t k : m.nonzero_indices()) {
        json e;
        e["word"] = m.word_of(k);
        e["value"] = complex_to_json(m.at(k).to_complex());
        entries.push_back(e);
    }
    json j;
    j["p"] = m.p();
    j["N"] = m.N();
    j["lambda"] = entries;
    return j;
}

Mask mask_from_json(const json& j) {
    Mask m(j.at("p").get<int>(), j.at("N").get<int>());
    for (const auto& e : j.at("lambda")) {
        std::vector<int> w = word_from_json(e.at("word"));
        RootScalar v = RootScalar::lift(m.p(), complex_from_json(e.at("value")), 1e-12);
        m.set(m.index_of(w), v);
    }
    return m;
}

std::string mask_to_csv(const Mask& m) {
    std::ostringstream os;
    for (int i = -m.N(); i <= 0; ++i) os << "alpha_" << i << ",";
    os << "re,im\n";
    for (std::size_t k = 0; k < m.size(); ++k) {
        for (int a : m.word_of(k)) os << a << ",";
        auto z = m.at(k).to_complex();
        os << json(z.real()).dump() << "," << json(z.imag()).dump() << "\n";
    }
    return os.str();
}

json beta_to_json(const CoefficientTable& beta) {
    json arr = json::array();
    for (std::size_t jx = 0; jx < beta.size(); ++jx) arr.push_back(complex_to_json(beta.at(jx).to_complex()));
    json j;
    j["p"] = beta.p();
    j["N"] = beta.N();
    j["beta"] = arr;
    return j;
}

CoefficientTable beta_from_json(const json& j, int p, int N) {
    CoefficientTable beta(p, N);
    const auto& arr = j.at("beta");
    if (arr.size() != beta.size()) throw FormatError("beta: wrong table size");
    for (std::size_t k = 0; k < beta.size(); ++k)
        beta.set(k, RootSum::numeric(p, complex_from_json(arr[k])));
    return beta;
}

std::string beta_to_csv(const CoefficientTable& beta) {
    std::ostringstream os;
    for (int i = 1; i <= beta.N() + 1; ++i) os << "a_-" << i << ",";
    os << "re,im\n";
    for (std::size_t j = 0; j < beta.size(); ++j) {
        for (int a : beta.digits_of(j)) os << a << ",";
        auto z = beta.at(j).to_complex();
        os << json(z.real()).dump() << "," << json(z.imag()).dump() << "\n";
    }
    return os.str();
}

json elementary_to_json(const ElementarySet& e) {
    json cosets = json::array();
    for (const auto& c : e.cosets()) cosets.push_back(c.word());
    json j;
    j["p"] = e.p();
    j["N"] = e.N();
    j["M"] = e.M();
    j["cosets"] = cosets;
    return j;
}

ElementarySet elementary_from_json(const json& j) {
    const int N = j.at("N").get<int>();
    std::vector<CharCoset> cosets;
    for (const auto& w : j.at("cosets")) cosets.emplace_back(N, word_from_json(w));
    return ElementarySet(j.at("p").get<int>(), N, j.at("M").get<int>(), std::move(cosets));
}

namespace {

std::string word_header(int N, int M, const char* stem) {
    std::string h;
    for (int k = -N; k < M; ++k) h += std::string(stem) + "_" + std::to_string(k) + ",";
    if (!h.empty()) h.pop_back();
    return h;
}

}  // namespace

std::string elementary_to_csv(const ElementarySet& e) {
    std::ostringstream os;
    os << word_header(e.N(), e.M(), "beta") << "\n";
    for (const auto& c : e.cosets()) {
        std::vector<int> w = c.padded_word(e.M() - 1);
        for (std::size_t i = 0; i < w.size(); ++i) os << w[i] << (i + 1 < w.size() ? "," : "");
        os << "\n";
    }
    return os.str();
}

std::string phi_hat_to_csv(const PhiTable& ph) {
    std::ostringstream os;
    os << word_header(ph.N(), ph.M(), "beta") << ",re,im\n";
    for (const auto& [coset, v] : ph.hat()) {
        for (int x : coset.padded_word(ph.M() - 1)) os << x << ",";
        auto z = v.to_complex();
        os << json(z.real()).dump() << "," << json(z.imag()).dump() << "\n";
    }
    return os.str();
}

std::string phi_values_to_csv(const PhiTable& ph) {
    std::ostringstream os;
    os << word_header(ph.N(), ph.M(), "x") << ",re,im\n";
    for (std::size_t i = 0; i < ph.values().size(); ++i) {
        for (int x : ph.value_word(i)) os << x << ",";
        auto z = ph.values()[i].to_complex();
        os << json(z.real()).dump() << "," << json(z.imag()).dump() << "\n";
    }
    return os.str();
}

std::string psi_values_to_csv(const WaveletBank& bank, int l) {
    if (l < 1 || l >= bank.p()) throw std::invalid_argument("psi_values_to_csv: l out of range");
    std::ostringstream os;
    os << word_header(bank.N(), bank.M() + 1, "x") << ",re,im\n";
    const auto& psi = bank.psi_tables()[static_cast<std::size_t>(l - 1)];
    const int len = bank.M() + bank.N() + 1;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        std::size_t t = i;
        std::vector<int> w(static_cast<std::size_t>(len), 0);
        for (int k = len - 1; k >= 0; --k) {
            w[static_cast<std::size_t>(k)] = static_cast<int>(t % static_cast<std::size_t>(bank.p()));
            t /= static_cast<std::size_t>(bank.p());
        }
        for (int x : w) os << x << ",";
        auto z = psi[i].to_complex();
        os << json(z.real()).dump() << "," << json(z.imag()).dump() << "\n";
    }
    return os.str();
}

json phi_to_json(const PhiTable& ph) {
    json hat = json::array();
    for (const auto& [coset, v] : ph.hat()) {
        json e;
        e["word"] = coset.word();
        e["value"] = complex_to_json(v.to_complex());
        hat.push_back(e);
    }
    json values = json::array();
    for (const auto& v : ph.values()) values.push_back(complex_to_json(v.to_complex()));
    json j;
    j["p"] = ph.p();
    j["N"] = ph.N();
    j["M"] = ph.M();
    j["hat"] = hat;
    j["values"] = values;  // index order: digit words (x_-N..x_{M-1}), x_-N most significant
    return j;
}

PhiTable phi_from_json(const json& j) {
    PhiTable ph(j.at("p").get<int>(), j.at("N").get<int>(), j.at("M").get<int>());
    for (const auto& e : j.at("hat"))
        ph.set_hat(CharCoset(ph.N(), word_from_json(e.at("word"))),
                   RootSum::numeric(ph.p(), complex_from_json(e.at("value"))));
    std::vector<RootSum> values;
    for (const auto& v : j.at("values")) values.push_back(RootSum::numeric(ph.p(), complex_from_json(v)));
    if (!values.empty()) ph.set_values(std::move(values));
    return ph;
}

json bank_to_json(const WaveletBank& bank) {
    json wavelets = json::array();
    for (std::size_t i = 0; i < bank.coefficient_tables().size(); ++i) {
        json w;
        w["l"] = static_cast<int>(i + 1);
        json arr = json::array();
        const auto& bl = bank.coefficient_tables()[i];
        for (std::size_t jx = 0; jx < bl.size(); ++jx) arr.push_back(complex_to_json(bl.at(jx).to_complex()));
        w["beta"] = arr;
        json psi = json::array();
        for (const auto& v : bank.psi_tables()[i]) psi.push_back(complex_to_json(v.to_complex()));
        w["psi"] = psi;  // index order: digit words (x_-N..x_M), x_-N most significant
        wavelets.push_back(w);
    }
    json j;
    j["p"] = bank.p();
    j["N"] = bank.N();
    j["M"] = bank.M();
    j["wavelets"] = wavelets;
    return j;
}

WaveletBank bank_from_json(const json& j) {
    const int p = j.at("p").get<int>();
    const int N = j.at("N").get<int>();
    const int M = j.at("M").get<int>();
    WaveletBank bank(p, N, M);
    for (const auto& w : j.at("wavelets")) {
        CoefficientTable bl(p, N);
        const auto& arr = w.at("beta");
        if (arr.size() != bl.size()) throw FormatError("bank: wrong beta size");
        for (std::size_t k = 0; k < bl.size(); ++k)
            bl.set(k, RootSum::numeric(p, complex_from_json(arr[k])));
        std::vector<RootSum> psi;
        for (const auto& v : w.at("psi")) psi.push_back(RootSum::numeric(p, complex_from_json(v)));
        bank.add_wavelet(std::move(bl), std::move(psi));
    }
    return bank;
}

json report_to_json(const Report& rep) {
    json checks = json::array();
    for (const auto& c : rep.items) {
        json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        e["deviation"] = c.deviation;
        if (!c.detail.empty()) e["detail"] = c.detail;
        checks.push_back(e);
    }
    json j;
    j["pass"] = rep.all_pass();
    j["max_deviation"] = rep.max_deviation();
    j["checks"] = checks;
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    return j;
}

std::string signal_to_csv(const FiniteSignal& f) {
    std::ostringstream os;
    os << "# p=" << f.p << " R=" << f.R << " S=" << f.S << "\n";
    os << "digits,re,im\n";
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        for (int d : f.word_of(i)) os << d;
        os << "," << json(f.samples[i].real()).dump() << "," << json(f.samples[i].imag()).dump()
           << "\n";
    }
    return os.str();
}

FiniteSignal signal_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    FiniteSignal f;
    bool have_meta = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (std::sscanf(line.c_str(), "# p=%d R=%d S=%d", &f.p, &f.R, &f.S) == 3) have_meta = true;
            continue;
        }
        if (line.rfind("digits", 0) == 0) continue;
        if (!have_meta) throw FormatError("signal: missing '# p=.. R=.. S=..' metadata line");
        auto c1 = line.find(',');
        auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw FormatError("signal: malformed row '" + line + "'");
        std::string digits = line.substr(0, c1);
        if (static_cast<int>(digits.size()) != f.R + f.S)
            throw FormatError("signal: digit string of wrong length");
        std::vector<int> w;
        for (char ch : digits) {
            if (ch < '0' || ch >= '0' + f.p) throw FormatError("signal: digit out of range");
            w.push_back(ch - '0');
        }
        double re = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        double im = std::stod(line.substr(c2 + 1));
        if (f.samples.empty()) f.samples.assign(f.expected_size(), {0.0, 0.0});
        f.samples[f.index_of(w)] = {re, im};
    }
    if (!have_meta || f.samples.size() != f.expected_size())
        throw FormatError("signal: incomplete file");
    return f;
}

json coefficients_to_json(const CoefficientBundle& c) {
    json details = json::array();
    for (const auto& level : c.details) {
        json per_l = json::array();
        for (const auto& table : level) {
            json arr = json::array();
            for (const auto& v : table) arr.push_back(complex_to_json(v));
            per_l.push_back(arr);
        }
        details.push_back(per_l);
    }
    json approx = json::array();
    for (const auto& v : c.approx) approx.push_back(complex_to_json(v));
    json j;
    j["p"] = c.p;
    j["R"] = c.R;
    j["S"] = c.S;
    j["levels"] = c.levels;
    j["approx"] = approx;
    j["details"] = details;
    return j;
}

CoefficientBundle coefficients_from_json(const json& j) {
    CoefficientBundle c;
    c.p = j.at("p").get<int>();
    c.R = j.at("R").get<int>();
    c.S = j.at("S").get<int>();
    c.levels = j.at("levels").get<int>();
    for (const auto& v : j.at("approx")) c.approx.push_back(complex_from_json(v));
    for (const auto& level : j.at("details")) {
        std::vector<std::vector<std::complex<double>>> per_l;
        for (const auto& table : level) {
            std::vector<std::complex<double>> arr;
            for (const auto& v : table) arr.push_back(complex_from_json(v));
            per_l.push_back(std::move(arr));
        }
        c.details.push_back(std::move(per_l));
    }
    return c;
}

PhaseTable phases_from_json(const json& j, int p) {
    PhaseTable t;
    for (const auto& e : j.at("windows")) {
        Window w = word_from_json(e.at("window"));
        RootScalar v = RootScalar::one(p);
        if (e.contains("phase_exp"))
            v = RootScalar::root(p, e.at("phase_exp").get<long>());
        else if (e.contains("re"))
            v = RootScalar::unimodular(p, {e.at("re").get<double>(), e.at("im").get<double>()});
        t.insert_or_assign(w, v);
    }
    return t;
}

json bundle_to_json(const MraBundle& b) {
    json j;
    j["kind"] = "mra-bundle";
    j["p"] = b.mask.p();
    j["N"] = b.mask.N();
    j["M"] = b.support.M();
    if (b.tree) j["tree"] = tree_to_json(*b.tree);
    j["mask"] = mask_to_json(b.mask);
    j["support"] = elementary_to_json(b.support);
    j["phi"] = phi_to_json(b.phi);
    j["beta"] = beta_to_json(b.beta);
    return j;
}

MraBundle bundle_from_json(const json& j) {
    const int p = j.at("p").get<int>();
    const int N = j.at("N").get<int>();
    std::optional<PTree> tree;
    if (j.contains("tree")) tree = tree_from_json(j.at("tree"));
    return MraBundle{std::move(tree), mask_from_json(j.at("mask")),
                     elementary_from_json(j.at("support")), phi_from_json(j.at("phi")),
                     beta_from_json(j.at("beta"), p, N)};
}

}  // namespace vilenkin
