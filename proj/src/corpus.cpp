#include "ringlab/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ringlab/dsl.hpp"

namespace ringlab {

namespace {

std::string substitute(const std::string& tmpl,
                       const std::vector<std::pair<std::string, std::string>>& binding) {
    std::string out;
    for (std::size_t i = 0; i < tmpl.size();) {
        if (tmpl[i] == '$') {
            std::size_t j = i + 1;
            while (j < tmpl.size() &&
                   (std::isalnum(static_cast<unsigned char>(tmpl[j])) || tmpl[j] == '_'))
                ++j;
            std::string var = tmpl.substr(i + 1, j - i - 1);
            bool hit = false;
            for (const auto& [k, v] : binding)
                if (k == var) {
                    out += v;
                    hit = true;
                    break;
                }
            if (!hit)
                fail(ErrorCode::bad_argument, "unbound corpus parameter $" + var);
            i = j;
        } else {
            out += tmpl[i++];
        }
    }
    return out;
}

}  // namespace

std::vector<ExprPtr> expand_corpus(const CorpusSpec& spec) {
    std::vector<ExprPtr> out;
    for (const auto& fam : spec.families) {
        // odometer over parameters, sorted by name, rightmost fastest
        std::vector<std::pair<std::string, std::vector<std::string>>> params(
            fam.params.begin(), fam.params.end());
        std::size_t total = 1;
        for (const auto& [_, vs] : params) total *= std::max<std::size_t>(vs.size(), 1);
        for (std::size_t t = 0; t < total; ++t) {
            std::vector<std::pair<std::string, std::string>> binding;
            std::size_t v = t;
            for (std::size_t i = params.size(); i-- > 0;) {
                const auto& vs = params[i].second;
                binding.emplace_back(params[i].first, vs.empty() ? "" : vs[v % vs.size()]);
                v /= std::max<std::size_t>(vs.size(), 1);
            }
            std::string text = substitute(fam.expr, binding);
            ExprPtr e = parse_ring_expr(text);
            std::size_t sz;
            try {
                sz = predicted_size(*e);
            } catch (const Error&) {
                continue;  // over the hard guard: drop
            }
            if (fam.max_size && sz > fam.max_size) continue;
            if (sz > spec.size_cap) continue;
            out.push_back(std::move(e));
        }
    }
    if (spec.quotients_by_j) {
        std::size_t base = out.size();
        for (std::size_t i = 0; i < base; ++i)
            out.push_back(make_expr(ExprKind::Quot, {ExprArg{out[i]}}));
    }
    return out;
}

CorpusSpec default_corpus() {
    CorpusSpec spec;
    spec.quotients_by_j = true;
    spec.size_cap = 4096;

    auto range_values = [](int lo, int hi) {
        std::vector<std::string> v;
        for (int i = lo; i <= hi; ++i) v.push_back(std::to_string(i));
        return v;
    };
    auto list_family = [&](std::vector<std::string> exprs, std::size_t max_size = 0) {
        CorpusSpec::Family f;
        f.expr = "$e";
        f.params["e"] = std::move(exprs);
        f.max_size = max_size;
        spec.families.push_back(std::move(f));
    };

    {
        CorpusSpec::Family f;
        f.expr = "Zmod($n)";
        f.params["n"] = range_values(2, 32);
        spec.families.push_back(std::move(f));
    }
    const std::vector<std::pair<std::string, std::size_t>> fields = {
        {"GF(2, 1)", 2}, {"GF(3, 1)", 3}, {"GF(2, 2)", 4},  {"GF(5, 1)", 5},
        {"GF(7, 1)", 7}, {"GF(2, 3)", 8}, {"GF(3, 2)", 9},  {"GF(2, 4)", 16},
    };
    {
        std::vector<std::string> v;
        for (const auto& [e, _] : fields) v.push_back(e);
        list_family(std::move(v));
    }
    {
        // products of pairs drawn from the Zmod and GF lists, |A||B| <= 256
        std::vector<std::pair<std::string, std::size_t>> base;
        for (int n = 2; n <= 32; ++n)
            base.emplace_back("Zmod(" + std::to_string(n) + ")", std::size_t(n));
        for (const auto& f : fields) base.push_back(f);
        std::vector<std::string> v;
        for (std::size_t i = 0; i < base.size(); ++i)
            for (std::size_t j = i; j < base.size(); ++j)
                if (base[i].second * base[j].second <= 256)
                    v.push_back("Prod(" + base[i].first + ", " + base[j].first + ")");
        list_family(std::move(v));
    }
    list_family({"Mat(2, Zmod(2))", "Mat(2, Zmod(3))"});
    list_family({"UT(2, Zmod(2))", "UT(2, Zmod(3))", "UT(2, Zmod(4))", "UT(2, GF(2, 2))",
                 "UT(3, Zmod(2))"});
    list_family({"SkewUT(2, GF(2, 2), frob)"});
    {
        CorpusSpec::Family f;
        f.expr = "Triv(Zmod($n))";
        f.params["n"] = range_values(2, 8);
        spec.families.push_back(f);
        f.expr = "DT(Zmod($n))";
        spec.families.push_back(std::move(f));
    }
    {
        CorpusSpec::Family f;
        f.expr = "PolyQ(Zmod($n), id, $k)";
        f.params["n"] = range_values(2, 8);
        f.params["k"] = {"2", "3"};
        spec.families.push_back(std::move(f));
    }
    {
        std::vector<std::string> bases = {"Zmod(2)",  "Zmod(3)",  "Zmod(4)",  "Zmod(5)",
                                          "Zmod(6)",  "Zmod(7)",  "Zmod(8)",  "Zmod(9)",
                                          "Zmod(10)", "Zmod(11)", "Zmod(12)", "Zmod(13)",
                                          "Zmod(14)", "Zmod(15)", "Zmod(16)", "GF(2, 2)",
                                          "GF(2, 3)", "GF(3, 2)", "GF(2, 4)"};
        for (const char* g : {"C(2)", "C(3)", "C(2)xC(2)"}) {
            CorpusSpec::Family f;
            f.expr = "GrpRing($r, " + std::string(g) + ")";
            f.params["r"] = bases;
            f.max_size = 4096;
            spec.families.push_back(std::move(f));
        }
    }
    list_family({"Ks(Zmod(4), #2)", "Ks(Zmod(8), #4)", "Ks(Zmod(8), #2)"});
    list_family({"Mns(2, Zmod(4), #2)", "Mns(2, Zmod(8), #4)", "Mns(2, Zmod(8), #2)"});
    list_family({"TrivMorita(Zmod(2), Zmod(2))", "TrivMorita(Zmod(3), Zmod(3))"});
    list_family({"FTri(Zmod(2), Zmod(3))", "FTri(Zmod(2), Zmod(2))", "FTri(Zmod(2))",
                 "FTri(Zmod(4))"});
    return spec;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string strip_quotes(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string> parse_values(const std::string& raw) {
    // "2..32" expands a range; otherwise comma-separated values
    std::string s = strip_quotes(raw);
    std::size_t dots = s.find("..");
    if (dots != std::string::npos) {
        int lo = std::stoi(trim(s.substr(0, dots)));
        int hi = std::stoi(trim(s.substr(dots + 2)));
        std::vector<std::string> out;
        for (int i = lo; i <= hi; ++i) out.push_back(std::to_string(i));
        return out;
    }
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

CorpusSpec parse_corpus_text(const std::string& text) {
    CorpusSpec spec;
    spec.families.clear();
    CorpusSpec::Family* current = nullptr;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line == "[[family]]" || line == "[family]") {
            spec.families.emplace_back();
            current = &spec.families.back();
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::parse_error,
                 "corpus file line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (!current) {
            if (key == "n_range") {
                spec.n_range.clear();
                for (const auto& v : parse_values(val)) spec.n_range.push_back(std::stoi(v));
            } else if (key == "quotients_by_j") {
                spec.quotients_by_j = strip_quotes(val) == "true";
            } else if (key == "size_cap") {
                spec.size_cap = std::stoull(strip_quotes(val));
            } else if (key == "seed") {
                spec.seed = std::stoull(strip_quotes(val), nullptr, 0);
            } else {
                fail(ErrorCode::parse_error, "corpus file line " + std::to_string(lineno) +
                                                 ": unknown top-level key '" + key + "'");
            }
            continue;
        }
        if (key == "expr")
            current->expr = strip_quotes(val);
        else if (key == "max_size")
            current->max_size = std::stoull(strip_quotes(val));
        else
            current->params[key] = parse_values(val);
    }
    for (const auto& f : spec.families)
        if (f.expr.empty())
            fail(ErrorCode::parse_error, "corpus family without an expr template");
    return spec;
}

CorpusSpec parse_corpus_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::bad_argument, "cannot open corpus file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_corpus_text(ss.str());
}

}  // namespace ringlab
