#include "pathsim/dsl.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

namespace pathsim::dsl {

namespace {

std::string format_double(double v) {
    if (v == 0.0) return "0";  // collapse -0
    std::array<char, 32> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

bool parse_full_double(std::string_view s, double& out) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size() && std::isfinite(out);
}

bool parse_full_u64(std::string_view s, std::uint64_t& out) {
    if (s.empty() || s[0] == '+' || s[0] == '-') return false;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

struct Token {
    std::string text;
    int column;  // 1-based
};

std::vector<Token> tokenize_line(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == '#') break;
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '=') {
            tokens.push_back({"=", static_cast<int>(i + 1)});
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
               line[i] != '#' && line[i] != '=') {
            ++i;
        }
        tokens.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start + 1)});
    }
    return tokens;
}

}  // namespace

PhaseValue PhaseValue::pi_rational(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("pi-rational with zero denominator");
    if (num == 0) return decimal(0.0);
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    PhaseValue v;
    v.pi_rational_ = true;
    v.num_ = num / g;
    v.den_ = den / g;
    return v;
}

PhaseValue PhaseValue::decimal(double value) {
    PhaseValue v;
    v.decimal_ = value == 0.0 ? 0.0 : value;  // collapse -0
    return v;
}

double PhaseValue::radians() const {
    return pi_rational_ ? static_cast<double>(num_) * std::numbers::pi / static_cast<double>(den_)
                        : decimal_;
}

std::string PhaseValue::to_string() const {
    if (!pi_rational_) return format_double(decimal_);
    std::string s;
    if (num_ == -1) {
        s = "-pi";
    } else if (num_ == 1) {
        s = "pi";
    } else {
        s = std::to_string(num_) + "pi";
    }
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
}

std::optional<PhaseValue> parse_number(std::string_view token) {
    const auto pi_pos = token.find("pi");
    if (pi_pos == std::string_view::npos) {
        double value = 0.0;
        if (!parse_full_double(token, value)) return std::nullopt;
        return PhaseValue::decimal(value);
    }

    std::string_view head = token.substr(0, pi_pos);
    std::string_view tail = token.substr(pi_pos + 2);

    long long num = 1;
    bool negative = false;
    if (!head.empty() && (head[0] == '-' || head[0] == '+')) {
        negative = head[0] == '-';
        head.remove_prefix(1);
    }
    if (!head.empty()) {
        const auto res = std::from_chars(head.data(), head.data() + head.size(), num);
        if (res.ec != std::errc{} || res.ptr != head.data() + head.size()) return std::nullopt;
    }
    if (negative) num = -num;

    long long den = 1;
    if (!tail.empty()) {
        if (tail[0] != '/') return std::nullopt;
        tail.remove_prefix(1);
        if (tail.empty() || tail[0] == '-' || tail[0] == '+') return std::nullopt;
        const auto res = std::from_chars(tail.data(), tail.data() + tail.size(), den);
        if (res.ec != std::errc{} || res.ptr != tail.data() + tail.size() || den == 0) {
            return std::nullopt;
        }
    }
    return PhaseValue::pi_rational(num, den);
}

ParseResult parse(const SourceText& src) {
    ExperimentAst ast;
    std::vector<ParseError> errors;

    const auto fail = [&errors](int line, const Token& tok, std::string message) {
        errors.push_back({line, tok.column, std::move(message), tok.text});
    };

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= src.text.size()) {
        const std::size_t eol = src.text.find('\n', pos);
        const std::string_view line(src.text.data() + pos,
                                    (eol == std::string::npos ? src.text.size() : eol) - pos);
        pos = eol == std::string::npos ? src.text.size() + 1 : eol + 1;
        ++line_no;

        const std::vector<Token> tokens = tokenize_line(line);
        if (tokens.empty()) continue;
        const Token& head = tokens[0];

        const auto expect_count = [&](std::size_t n, const char* usage) {
            if (tokens.size() == n) return true;
            fail(line_no, head, std::string("expected '") + usage + "'");
            return false;
        };
        const auto number_arg = [&](const Token& tok) -> std::optional<PhaseValue> {
            const auto value = parse_number(tok.text);
            if (!value) fail(line_no, tok, "malformed number");
            return value;
        };

        if (head.text == "phase") {
            if (!expect_count(4, "phase <phi1|phi3> = <number>")) continue;
            const Token& name = tokens[1];
            if (name.text != "phi1" && name.text != "phi3") {
                fail(line_no, name, "phase name must be phi1 or phi3");
                continue;
            }
            if (tokens[2].text != "=") {
                fail(line_no, tokens[2], "expected '=' after the phase name");
                continue;
            }
            const auto value = number_arg(tokens[3]);
            if (!value) continue;
            auto& slot = name.text == "phi1" ? ast.phi1 : ast.phi3;
            if (slot) {
                fail(line_no, name, "duplicate assignment of " + name.text);
                continue;
            }
            slot = *value;
        } else if (head.text == "detect") {
            if (!expect_count(3, "detect <L|R> <1|3>")) continue;
            const Token& side = tokens[1];
            if (side.text != "L" && side.text != "R") {
                fail(line_no, side, "detect side must be L or R");
                continue;
            }
            const Token& stage_tok = tokens[2];
            if (stage_tok.text != "1" && stage_tok.text != "3") {
                fail(line_no, stage_tok, "stage must be 1 or 3");
                continue;
            }
            auto& slot = side.text == "L" ? ast.detect_l : ast.detect_r;
            if (slot) {
                fail(line_no, side, "duplicate detect statement for side " + side.text);
                continue;
            }
            slot = stage_tok.text == "1" ? 1 : 3;
        } else if (head.text == "geometry") {
            if (!expect_count(4, "geometry <label> <t> <x>")) continue;
            const Token& label = tokens[1];
            const auto t = number_arg(tokens[2]);
            const auto x = number_arg(tokens[3]);
            if (!t || !x) continue;
            const auto dup = std::find_if(ast.geometry.begin(), ast.geometry.end(),
                                          [&](const GeometryStmt& g) { return g.label == label.text; });
            if (dup != ast.geometry.end()) {
                fail(line_no, label, "duplicate geometry label '" + label.text + "'");
                continue;
            }
            ast.geometry.push_back({label.text, t->radians(), x->radians()});
        } else if (head.text == "model") {
            if (tokens.size() < 2) {
                fail(line_no, head, "expected 'model <name> [params...]'");
                continue;
            }
            if (ast.model) {
                fail(line_no, head, "duplicate model statement");
                continue;
            }
            const Token& name = tokens[1];
            if (name.text != "local" && name.text != "sum_threshold" && name.text != "weighted") {
                fail(line_no, name, "unknown model '" + name.text +
                                        "' (known: local, sum_threshold, weighted)");
                continue;
            }
            ModelStmt model{name.text, {}};
            bool bad = false;
            for (std::size_t i = 2; i < tokens.size(); ++i) {
                const auto value = number_arg(tokens[i]);
                if (!value) {
                    bad = true;
                    break;
                }
                model.params.push_back(value->radians());
            }
            if (bad) continue;
            ast.model = std::move(model);
        } else if (head.text == "sweep") {
            if (!expect_count(5, "sweep <phi1|phi3> <from> <to> <steps>")) continue;
            const Token& name = tokens[1];
            if (name.text != "phi1" && name.text != "phi3") {
                fail(line_no, name, "sweep target must be phi1 or phi3");
                continue;
            }
            if (ast.sweep) {
                fail(line_no, head, "duplicate sweep statement");
                continue;
            }
            const auto from = number_arg(tokens[2]);
            const auto to = number_arg(tokens[3]);
            if (!from || !to) continue;
            std::uint64_t steps = 0;
            if (!parse_full_u64(tokens[4].text, steps) || steps < 1 || steps > 10'000'000) {
                fail(line_no, tokens[4], "steps must be a positive integer");
                continue;
            }
            ast.sweep = SweepStmt{name.text, *from, *to, static_cast<std::uint32_t>(steps)};
        } else if (head.text == "seed") {
            if (!expect_count(2, "seed <nonnegative integer>")) continue;
            if (ast.seed) {
                fail(line_no, head, "duplicate seed statement");
                continue;
            }
            std::uint64_t seed = 0;
            if (!parse_full_u64(tokens[1].text, seed)) {
                fail(line_no, tokens[1], "seed must be a nonnegative integer");
                continue;
            }
            ast.seed = seed;
        } else if (head.text == "samples") {
            if (!expect_count(2, "samples <nonnegative integer>")) continue;
            if (ast.samples) {
                fail(line_no, head, "duplicate samples statement");
                continue;
            }
            std::uint64_t samples = 0;
            if (!parse_full_u64(tokens[1].text, samples)) {
                fail(line_no, tokens[1], "samples must be a nonnegative integer");
                continue;
            }
            ast.samples = samples;
        } else {
            fail(line_no, head, "unknown keyword '" + head.text + "'");
        }
    }

    std::sort(ast.geometry.begin(), ast.geometry.end(),
              [](const GeometryStmt& a, const GeometryStmt& b) { return a.label < b.label; });

    ParseResult result;
    result.errors = std::move(errors);
    if (result.errors.empty()) result.ast = std::move(ast);
    return result;
}

std::string print_canonical(const ExperimentAst& ast) {
    std::string out;
    const auto line = [&out](const std::string& s) {
        out += s;
        out += '\n';
    };

    if (ast.phi1) line("phase phi1 = " + ast.phi1->to_string());
    if (ast.phi3) line("phase phi3 = " + ast.phi3->to_string());
    if (ast.detect_l) line("detect L " + std::to_string(*ast.detect_l));
    if (ast.detect_r) line("detect R " + std::to_string(*ast.detect_r));
    for (const auto& g : ast.geometry) {
        line("geometry " + g.label + " " + format_double(g.t) + " " + format_double(g.x));
    }
    if (ast.model) {
        std::string s = "model " + ast.model->name;
        for (const double p : ast.model->params) s += " " + format_double(p);
        line(s);
    }
    if (ast.sweep) {
        line("sweep " + ast.sweep->target + " " + ast.sweep->from.to_string() + " " +
             ast.sweep->to.to_string() + " " + std::to_string(ast.sweep->steps));
    }
    if (ast.seed) line("seed " + std::to_string(*ast.seed));
    if (ast.samples) line("samples " + std::to_string(*ast.samples));
    return out;
}

CompiledExperiment compile(const ExperimentAst& ast) {
    CompiledExperiment exp;
    exp.scenario.phi1 = ast.phi1 ? ast.phi1->radians() : 0.0;
    exp.scenario.phi3 = ast.phi3 ? ast.phi3->radians() : 0.0;
    exp.scenario.detect_l = ast.detect_l.value_or(1);
    exp.scenario.detect_r = ast.detect_r.value_or(1);

    if (ast.geometry.empty()) {
        exp.geometry = ApparatusGeometry::paper_default();
    } else {
        for (const auto& g : ast.geometry) {
            exp.geometry.events[g.label] = {g.t, g.x, g.label};
        }
    }
    if (exp.scenario.detect_r == 3 && !exp.geometry.has(kEventRAtBs3)) {
        throw CompileError(std::string("detect R 3 needs a geometry event ") + kEventRAtBs3);
    }

    exp.model = ast.model.value_or(ModelStmt{"sum_threshold", {}});

    exp.run.seed = ast.seed.value_or(0);
    exp.run.seed_set = ast.seed.has_value();
    exp.run.samples = ast.samples.value_or(0);
    exp.run.samples_set = ast.samples.has_value();
    exp.run.sweep = ast.sweep;
    return exp;
}

std::vector<double> sweep_grid(const SweepStmt& sweep) {
    const double from = sweep.from.radians();
    const double to = sweep.to.radians();
    const double step = (to - from) / static_cast<double>(sweep.steps);
    std::vector<double> grid;
    grid.reserve(sweep.steps);
    for (std::uint32_t k = 0; k < sweep.steps; ++k) {
        grid.push_back(from + static_cast<double>(k) * step);
    }
    return grid;
}

}  // namespace pathsim::dsl
