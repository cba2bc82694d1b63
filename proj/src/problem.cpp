#include "perhamm/problem.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "perhamm/errors.hpp"
#include "perhamm/expr.hpp"
#include "perhamm_bundled.hpp"

namespace perhamm {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ProblemFileError(path + ": " + message);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) {
        fail(path, "expected an object");
    }
    for (const auto& item : obj.items()) {
        bool known = false;
        for (auto key : allowed) {
            known = known || item.key() == key;
        }
        if (!known) {
            fail(path + "." + item.key(), "unknown key");
        }
    }
}

const json* member(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

const json& required(const json& obj, const std::string& path, const char* key) {
    const json* value = member(obj, key);
    if (value == nullptr) {
        fail(path + "." + key, "missing required key");
    }
    return *value;
}

double constant_expression(const std::string& text, const std::string& path) {
    Expr e = Expr::number(0.0);
    try {
        e = parse(text);
    } catch (const ParseError& err) {
        fail(path, err.what());
    }
    ExprInfo info = analyze(e);
    if (!info.symbols.empty() || !info.point_evals.empty() || info.has_integral || info.uses_t || info.uses_s) {
        fail(path, "expected a constant expression, got '" + text + "'");
    }
    double value = 0.0;
    try {
        value = eval_point(e, 0.0, {});
    } catch (const DomainError& err) {
        fail(path, err.what());
    }
    return value;
}

double read_number(const json& value, const std::string& path) {
    double x = 0.0;
    if (value.is_number()) {
        x = value.get<double>();
    } else if (value.is_string()) {
        x = constant_expression(value.get<std::string>(), path);
    } else {
        fail(path, "expected a number");
    }
    if (!std::isfinite(x)) {
        fail(path, "expected a finite number");
    }
    return x;
}

long long read_integer(const json& value, const std::string& path) {
    if (value.is_number_integer()) {
        return value.get<long long>();
    }
    if (value.is_number_float()) {
        double x = value.get<double>();
        if (std::isfinite(x) && std::floor(x) == x && std::abs(x) < 9e15) {
            return static_cast<long long>(x);
        }
    }
    fail(path, "expected an integer");
}

std::string read_string(const json& value, const std::string& path) {
    if (!value.is_string()) {
        fail(path, "expected a string");
    }
    return value.get<std::string>();
}

std::string read_expression(const json& value, const std::string& path) {
    std::string text = read_string(value, path);
    try {
        parse(text);
    } catch (const ParseError& err) {
        fail(path, err.what());
    }
    return text;
}

const json& read_array(const json& value, const std::string& path) {
    if (!value.is_array()) {
        fail(path, "expected an array");
    }
    return value;
}

KernelSource read_kernel(const json& value, const std::string& path) {
    KernelSource source;
    if (value.is_string()) {
        source.builtin = value.get<std::string>();
        source.name = *source.builtin;
        try {
            builtin_kernel(*source.builtin);
        } catch (const LookupError&) {
            fail(path, "unknown builtin kernel '" + *source.builtin + "'");
        }
        return source;
    }
    check_keys(value, path, {"name", "levels"});
    source.name = member(value, "name") ? read_string(value["name"], path + ".name") : "inline";
    const json& levels = read_array(required(value, path, "levels"), path + ".levels");
    for (std::size_t l = 0; l < levels.size(); ++l) {
        std::string lpath = path + ".levels[" + std::to_string(l) + "]";
        const json& level = levels[l];
        check_keys(level, lpath, {"lower", "upper", "jump", "dominator"});
        LevelSource ls;
        ls.lower = read_expression(required(level, lpath, "lower"), lpath + ".lower");
        ls.upper = read_expression(required(level, lpath, "upper"), lpath + ".upper");
        if (const json* jump = member(level, "jump")) {
            if (!jump->is_boolean()) {
                fail(lpath + ".jump", "expected a boolean");
            }
            ls.jump = jump->get<bool>();
        }
        if (const json* dom = member(level, "dominator")) {
            ls.dominator = read_expression(*dom, lpath + ".dominator");
        }
        source.levels.push_back(std::move(ls));
    }
    if (source.levels.empty()) {
        fail(path + ".levels", "at least one level is required");
    }
    return source;
}

TermSource read_term(const json& value, const std::string& path) {
    check_keys(value, path, {"eta", "gamma", "functional"});
    TermSource term;
    term.eta = read_number(required(value, path, "eta"), path + ".eta");
    const json& gamma = read_array(required(value, path, "gamma"), path + ".gamma");
    for (std::size_t l = 0; l < gamma.size(); ++l) {
        term.gamma.push_back(read_expression(gamma[l], path + ".gamma[" + std::to_string(l) + "]"));
    }
    term.functional = read_expression(required(value, path, "functional"), path + ".functional");
    return term;
}

ComponentSource read_component(const json& value, const std::string& path) {
    check_keys(value, path, {"kernel", "m", "lambda", "nonlinearity", "terms", "kernel_constant_bounds"});
    ComponentSource c;
    c.kernel = read_kernel(required(value, path, "kernel"), path + ".kernel");
    c.m = static_cast<int>(read_integer(required(value, path, "m"), path + ".m"));
    c.lambda = read_number(required(value, path, "lambda"), path + ".lambda");
    c.nonlinearity = read_expression(required(value, path, "nonlinearity"), path + ".nonlinearity");
    if (const json* terms = member(value, "terms")) {
        read_array(*terms, path + ".terms");
        for (std::size_t j = 0; j < terms->size(); ++j) {
            c.terms.push_back(read_term((*terms)[j], path + ".terms[" + std::to_string(j) + "]"));
        }
    }
    if (const json* bounds = member(value, "kernel_constant_bounds")) {
        if (!bounds->is_object()) {
            fail(path + ".kernel_constant_bounds", "expected an object");
        }
        for (const auto& item : bounds->items()) {
            std::string bpath = path + ".kernel_constant_bounds." + item.key();
            int level = -1;
            std::istringstream in(item.key());
            if (!(in >> level) || !in.eof() || level < 0) {
                fail(bpath, "expected a derivative level as key");
            }
            c.kernel_constant_bounds[level] = read_number(item.value(), bpath);
        }
    }
    return c;
}

ExistenceBlock read_existence(const json& value, const std::string& path) {
    check_keys(value, path, {"r", "R", "delta", "i0"});
    ExistenceBlock block;
    if (const json* r = member(value, "r")) {
        block.r = read_number(*r, path + ".r");
    }
    block.R = read_number(required(value, path, "R"), path + ".R");
    if (const json* delta = member(value, "delta")) {
        block.delta = read_number(*delta, path + ".delta");
    }
    block.i0 = static_cast<int>(read_integer(required(value, path, "i0"), path + ".i0"));
    return block;
}

NonexistenceBlock read_nonexistence(const json& value, const std::string& path) {
    check_keys(value, path, {"taus", "xis", "attest_functionals"});
    NonexistenceBlock block;
    const json& taus = read_array(required(value, path, "taus"), path + ".taus");
    for (std::size_t i = 0; i < taus.size(); ++i) {
        block.taus.push_back(read_number(taus[i], path + ".taus[" + std::to_string(i) + "]"));
    }
    if (const json* xis = member(value, "xis")) {
        read_array(*xis, path + ".xis");
        for (std::size_t i = 0; i < xis->size(); ++i) {
            std::string rpath = path + ".xis[" + std::to_string(i) + "]";
            const json& row = read_array((*xis)[i], rpath);
            std::vector<double> values;
            for (std::size_t j = 0; j < row.size(); ++j) {
                values.push_back(read_number(row[j], rpath + "[" + std::to_string(j) + "]"));
            }
            block.xis.push_back(std::move(values));
        }
    }
    if (const json* attest = member(value, "attest_functionals")) {
        if (!attest->is_boolean()) {
            fail(path + ".attest_functionals", "expected a boolean");
        }
        block.attest_functionals = attest->get<bool>();
    }
    return block;
}

Numerics read_numerics(const json& value, const std::string& path) {
    check_keys(value, path, {"resolution", "tol", "max_iter", "damping", "starts", "seed"});
    Numerics num;
    if (const json* v = member(value, "resolution")) {
        num.resolution = static_cast<int>(read_integer(*v, path + ".resolution"));
    }
    if (const json* v = member(value, "tol")) {
        num.tol = read_number(*v, path + ".tol");
    }
    if (const json* v = member(value, "max_iter")) {
        num.max_iter = static_cast<int>(read_integer(*v, path + ".max_iter"));
    }
    if (const json* v = member(value, "damping")) {
        num.damping = read_number(*v, path + ".damping");
    }
    if (const json* v = member(value, "starts")) {
        num.starts = static_cast<int>(read_integer(*v, path + ".starts"));
    }
    if (const json* v = member(value, "seed")) {
        long long seed = read_integer(*v, path + ".seed");
        if (seed < 0) {
            fail(path + ".seed", "expected a nonnegative integer");
        }
        num.seed = static_cast<std::uint64_t>(seed);
    }
    if (num.resolution < 16) {
        fail(path + ".resolution", "must be at least 16");
    }
    if (!(num.tol > 0.0)) {
        fail(path + ".tol", "must be positive");
    }
    if (num.max_iter < 1) {
        fail(path + ".max_iter", "must be positive");
    }
    if (!(num.damping > 0.0 && num.damping <= 1.0)) {
        fail(path + ".damping", "must lie in (0, 1]");
    }
    if (num.starts < 1) {
        fail(path + ".starts", "must be positive");
    }
    return num;
}

std::string line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < end; ++k) {
        if (text[k] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

json number_json(double x) { return x; }

}  // namespace

ProblemFile parse_problem(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end(), nullptr, true, true);
    } catch (const json::parse_error& err) {
        std::string what = err.what();
        auto colon = what.rfind(": ");
        throw ProblemFileError("syntax error at " + line_column(text, err.byte) +
                               (colon == std::string::npos ? "" : what.substr(colon)));
    }
    check_keys(doc, "$", {"title", "system", "existence", "nonexistence", "numerics"});
    ProblemFile problem;
    if (const json* title = member(doc, "title")) {
        problem.title = read_string(*title, "$.title");
    }
    const json& system = required(doc, "$", "system");
    check_keys(system, "$.system", {"n", "components"});
    const json& components = read_array(required(system, "$.system", "components"), "$.system.components");
    for (std::size_t i = 0; i < components.size(); ++i) {
        problem.components.push_back(
            read_component(components[i], "$.system.components[" + std::to_string(i) + "]"));
    }
    if (problem.components.empty()) {
        fail("$.system.components", "at least one component is required");
    }
    if (const json* n = member(system, "n")) {
        if (read_integer(*n, "$.system.n") != static_cast<long long>(problem.components.size())) {
            fail("$.system.n", "does not match the number of components");
        }
    }
    if (const json* e = member(doc, "existence")) {
        problem.existence = read_existence(*e, "$.existence");
    }
    if (const json* ne = member(doc, "nonexistence")) {
        problem.nonexistence = read_nonexistence(*ne, "$.nonexistence");
    }
    if (const json* num = member(doc, "numerics")) {
        problem.numerics = read_numerics(*num, "$.numerics");
    }
    return problem;
}

ProblemFile load_problem(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ProblemFileError("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem(buffer.str());
}

std::string emit_problem(const ProblemFile& problem) {
    json doc = json::object();
    doc["title"] = problem.title;
    json components = json::array();
    for (const auto& c : problem.components) {
        json jc = json::object();
        if (c.kernel.builtin) {
            jc["kernel"] = *c.kernel.builtin;
        } else {
            json levels = json::array();
            for (const auto& l : c.kernel.levels) {
                json jl = {{"lower", l.lower}, {"upper", l.upper}, {"jump", l.jump}};
                if (l.dominator) {
                    jl["dominator"] = *l.dominator;
                }
                levels.push_back(std::move(jl));
            }
            jc["kernel"] = {{"name", c.kernel.name}, {"levels", std::move(levels)}};
        }
        jc["m"] = c.m;
        jc["lambda"] = number_json(c.lambda);
        jc["nonlinearity"] = c.nonlinearity;
        json terms = json::array();
        for (const auto& t : c.terms) {
            terms.push_back({{"eta", number_json(t.eta)}, {"gamma", t.gamma}, {"functional", t.functional}});
        }
        jc["terms"] = std::move(terms);
        if (!c.kernel_constant_bounds.empty()) {
            json bounds = json::object();
            for (const auto& [level, value] : c.kernel_constant_bounds) {
                bounds[std::to_string(level)] = number_json(value);
            }
            jc["kernel_constant_bounds"] = std::move(bounds);
        }
        components.push_back(std::move(jc));
    }
    doc["system"] = {{"n", problem.components.size()}, {"components", std::move(components)}};
    if (problem.existence) {
        const auto& e = *problem.existence;
        json je = {{"R", number_json(e.R)}, {"i0", e.i0}};
        if (e.r) {
            je["r"] = number_json(*e.r);
        }
        if (e.delta) {
            je["delta"] = number_json(*e.delta);
        }
        doc["existence"] = std::move(je);
    }
    if (problem.nonexistence) {
        const auto& ne = *problem.nonexistence;
        doc["nonexistence"] = {{"taus", ne.taus}, {"xis", ne.xis}, {"attest_functionals", ne.attest_functionals}};
    }
    const auto& num = problem.numerics;
    doc["numerics"] = {{"resolution", num.resolution}, {"tol", num.tol},           {"max_iter", num.max_iter},
                       {"damping", num.damping},       {"starts", num.starts},     {"seed", num.seed}};
    return doc.dump(2) + "\n";
}

Kernel build_kernel(const KernelSource& source) {
    if (source.builtin) {
        return builtin_kernel(*source.builtin);
    }
    return kernel_from_expressions(source.name, source.levels);
}

SystemSpec build_system(const ProblemFile& problem) {
    SystemSpec spec;
    for (std::size_t i = 0; i < problem.components.size(); ++i) {
        const auto& src = problem.components[i];
        std::string path = "$.system.components[" + std::to_string(i) + "]";
        try {
            Component c{build_kernel(src.kernel), src.lambda, parse(src.nonlinearity), {}, {}};
            if (c.order() != src.m) {
                fail(path + ".m", "kernel has order " + std::to_string(c.order()));
            }
            for (const auto& t : src.terms) {
                Term term;
                term.eta = t.eta;
                for (const auto& g : t.gamma) {
                    term.gamma.push_back(parse(g));
                }
                term.functional = parse(t.functional);
                c.terms.push_back(std::move(term));
            }
            c.constant_bounds.assign(c.order() + 1, std::nullopt);
            for (const auto& [level, value] : src.kernel_constant_bounds) {
                if (level > c.order()) {
                    fail(path + ".kernel_constant_bounds", "level " + std::to_string(level) + " exceeds m");
                }
                c.constant_bounds[level] = value;
            }
            spec.components.push_back(std::move(c));
        } catch (const ParseError& err) {
            fail(path, err.what());
        } catch (const ArgumentError& err) {
            fail(path, err.what());
        }
    }
    try {
        validate(spec);
    } catch (const ArgumentError& err) {
        fail("$.system", err.what());
    }
    return spec;
}

ExistenceHypotheses build_existence(const ProblemFile& problem, const SystemSpec& spec) {
    if (!problem.existence) {
        throw ProblemFileError("$.existence: block is missing");
    }
    const auto& block = *problem.existence;
    if (block.i0 < 1 || block.i0 > spec.n()) {
        fail("$.existence.i0", "must lie in [1, n]");
    }
    if (!(block.R > 0.0)) {
        fail("$.existence.R", "must be positive");
    }
    ExistenceHypotheses hyp;
    hyp.R = block.R;
    hyp.i0 = block.i0;
    hyp.resolution = problem.numerics.resolution;
    hyp.seed = problem.numerics.seed;
    if (block.r && block.delta) {
        hyp.r = *block.r;
        hyp.delta = *block.delta;
    } else {
        ExistenceWindow window = search_existence_window(spec, block.R, block.i0, hyp.resolution, hyp.spectral_tol);
        hyp.r = block.r.value_or(window.r);
        hyp.delta = block.delta.value_or(window.delta);
    }
    if (!(hyp.r > 0.0 && hyp.r < hyp.R)) {
        fail("$.existence.r", "must lie in (0, R)");
    }
    return hyp;
}

NonexistenceHypotheses build_nonexistence(const ProblemFile& problem) {
    if (!problem.nonexistence) {
        throw ProblemFileError("$.nonexistence: block is missing");
    }
    NonexistenceHypotheses hyp;
    hyp.taus = problem.nonexistence->taus;
    hyp.xis = problem.nonexistence->xis;
    hyp.attest_functionals = problem.nonexistence->attest_functionals;
    hyp.resolution = problem.numerics.resolution;
    hyp.seed = problem.numerics.seed;
    return hyp;
}

std::string_view bundled_problem(std::string_view name) {
    for (const auto& entry : detail::kBundledProblems) {
        if (entry.name == name) {
            return entry.text;
        }
    }
    throw LookupError("no bundled problem named '" + std::string(name) + "'");
}

const std::vector<std::string>& bundled_problem_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& entry : detail::kBundledProblems) {
            out.emplace_back(entry.name);
        }
        return out;
    }();
    return names;
}

}  // namespace perhamm
