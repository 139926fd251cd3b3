#include "pathsim/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace pathsim {

using nlohmann::json;

std::string format_real(double v) {
    if (v == 0.0) return "0";
    std::array<char, 32> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

json scenario_json(const Scenario& s) {
    return json{{"phi1", s.phi1}, {"phi3", s.phi3}, {"detect_l", s.detect_l}, {"detect_r", s.detect_r}};
}

namespace {

json base_doc(const char* command, const std::string& input) {
    json doc;
    doc["version"] = kVersion;
    doc["command"] = command;
    doc["input"] = input;
    return doc;
}

std::string join_phases(const std::vector<double>& phases) {
    std::string out;
    for (std::size_t i = 0; i < phases.size(); ++i) {
        if (i > 0) out += ';';
        out += format_real(phases[i]);
    }
    return out;
}

// Display precision for human tables; data formats keep full precision.
std::string disp(double v) {
    if (v == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string disp_phases(const std::vector<double>& phases) {
    std::string out;
    for (std::size_t i = 0; i < phases.size(); ++i) {
        if (i > 0) out += ", ";
        out += disp(phases[i]);
    }
    return out;
}

std::string mode_label(char letter, Side side) { return to_string(Mode{letter, side}); }

constexpr const char* kBold = "\x1b[1m";
constexpr const char* kReset = "\x1b[0m";

std::string heading(const std::string& text, bool color) {
    return color ? kBold + text + kReset + "\n" : text + "\n";
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string scenario_line(const json& doc) {
    const auto& s = doc.at("scenario");
    return "scenario: phi1=" + disp(s.at("phi1").get<double>()) +
           " phi3=" + disp(s.at("phi3").get<double>()) +
           " detect L at stage " + std::to_string(s.at("detect_l").get<int>()) +
           ", R at stage " + std::to_string(s.at("detect_r").get<int>()) + "\n";
}

}  // namespace

OutputRecord run_record(const std::string& input, const Scenario& s, const JointState& state) {
    json doc = base_doc("run", input);
    doc["scenario"] = scenario_json(s);
    json amps = json::array();
    const JointState canonical = canonical_global_phase(state);
    for (const auto& [key, amp] : canonical.amplitudes()) {
        amps.push_back(json{{"outcome_l", std::string(1, key.l)},
                            {"outcome_r", std::string(1, key.r)},
                            {"re", amp.real()},
                            {"im", amp.imag()},
                            {"probability", std::norm(amp)}});
    }
    doc["amplitudes"] = std::move(amps);
    return {std::move(doc)};
}

OutputRecord sweep_record(const std::string& input, const Scenario& s, const dsl::SweepStmt& sweep,
                          const CorrelationTable& table) {
    json doc = base_doc("sweep", input);
    doc["scenario"] = scenario_json(s);
    doc["sweep"] = json{{"target", sweep.target},
                        {"from", sweep.from.radians()},
                        {"to", sweep.to.radians()},
                        {"steps", sweep.steps}};
    json rows = json::array();
    for (const auto& row : table) {
        rows.push_back(json{{"phi1", row.phi1}, {"phi3", row.phi3}, {"e", row.e}});
    }
    doc["rows"] = std::move(rows);
    return {std::move(doc)};
}

OutputRecord sample_record(const std::string& input, const Scenario& s, std::uint64_t seed,
                           std::uint64_t samples, const std::vector<DetectionRecord>& records) {
    json doc = base_doc("sample", input);
    doc["scenario"] = scenario_json(s);
    doc["seed"] = seed;
    doc["samples"] = samples;
    json events = json::array();
    for (const auto& r : records) {
        events.push_back(json{{"outcome_l", std::string(1, r.outcome_l)},
                              {"outcome_r", std::string(1, r.outcome_r)},
                              {"count", r.count}});
    }
    doc["events"] = std::move(events);
    return {std::move(doc)};
}

OutputRecord chsh_record(double a, double a2, double b, double b2) {
    json doc = base_doc("chsh", "");
    doc.erase("input");
    doc["settings"] = json{{"a", a}, {"a2", a2}, {"b", b}, {"b2", b2}};
    const std::array<std::pair<double, double>, 4> settings{{{a, b}, {a, b2}, {a2, b}, {a2, b2}}};
    json terms = json::array();
    for (const auto& [phi1, phi3] : settings) {
        terms.push_back(json{{"phi1", phi1},
                             {"phi3", phi3},
                             {"e", correlation(Scenario{phi1, phi3, 1, 3})}});
    }
    doc["terms"] = std::move(terms);
    doc["s"] = chsh(a, a2, b, b2);
    doc["local_bound"] = 2.0;
    doc["tsirelson_bound"] = 2.0 * std::numbers::sqrt2_v<double>;
    return {std::move(doc)};
}

OutputRecord frames_record(const std::string& input, const Scenario& s,
                           const ApparatusGeometry& geometry, const FramePair& frames) {
    json doc = base_doc("frames", input);
    doc["scenario"] = scenario_json(s);

    json events = json::array();
    for (const auto& [label, e] : geometry.events) {
        events.push_back(json{{"label", label}, {"t", e.t}, {"x", e.x}});
    }
    doc["events"] = std::move(events);

    const std::array<std::pair<const char*, const char*>, 3> pairs{
        {{kEventLAtBs1, kEventRAtBs1}, {kEventLAtBs1, kEventRAtBs3}, {kEventRAtBs1, kEventRAtBs3}}};
    json intervals = json::array();
    for (const auto& [first, second] : pairs) {
        if (!geometry.has(first) || !geometry.has(second)) continue;
        const auto interval = interval_class(geometry.at(first), geometry.at(second));
        intervals.push_back(json{{"first", first},
                                 {"second", second},
                                 {"class", to_string(interval.kind)},
                                 {"value", interval.value}});
    }
    doc["intervals"] = std::move(intervals);

    doc["frames"] = json{{"i1", {{"velocity", frames.i1.velocity()}, {"gamma", frames.i1.gamma()}}},
                         {"i2", {{"velocity", frames.i2.velocity()}, {"gamma", frames.i2.gamma()}}}};

    json orderings = json::array();
    json phases = json::object();
    for (const auto& [frame_name, frame] : {std::pair{"i1", frames.i1}, std::pair{"i2", frames.i2}}) {
        for (const char* label : {kEventRAtBs1, kEventRAtBs3}) {
            if (!geometry.has(label)) continue;
            orderings.push_back(
                json{{"frame", frame_name},
                     {"event", label},
                     {"relation", to_string(ordering(geometry.at(label), geometry.at(kEventLAtBs1),
                                                     frame))}});
        }
        phases[frame_name] = available_remote_phases(s, frame, geometry);
    }
    doc["orderings"] = std::move(orderings);
    doc["available_phases"] = std::move(phases);
    return {std::move(doc)};
}

OutputRecord ambiguity_record(const std::string& input, const Scenario& s, const FramePair& frames,
                              const NonlocalOutcomeModel& model, double lambda,
                              const AmbiguityReport& report, const NoSignalingCertificate& cert,
                              std::size_t cert_grid_points) {
    json doc = base_doc("ambiguity", input);
    doc["scenario"] = scenario_json(s);
    doc["frames"] = json{{"i1", {{"velocity", frames.i1.velocity()}}},
                         {"i2", {{"velocity", frames.i2.velocity()}}}};
    doc["model"] =
        json{{"name", model.name}, {"description", model.description}};
    doc["lambda"] = lambda;
    doc["report"] = json{{"phases_i1", report.phases_frame1},
                         {"phases_i2", report.phases_frame2},
                         {"outcome_i1", report.outcome_frame1},
                         {"outcome_i2", report.outcome_frame2},
                         {"ambiguous", report.ambiguous}};
    doc["no_signaling"] = json{{"ok", cert.ok},
                               {"max_deviation", cert.max_deviation},
                               {"grid_points", cert_grid_points}};
    return {std::move(doc)};
}

std::string render_json(const OutputRecord& record) {
    const json& doc = record.doc;
    if (doc.at("command") == "sample") {
        // JSON lines: the metadata object, then one detection record per line.
        json meta = doc;
        meta.erase("events");
        std::string out = meta.dump() + "\n";
        for (const auto& event : doc.at("events")) out += event.dump() + "\n";
        return out;
    }
    return doc.dump() + "\n";
}

std::string render_csv(const OutputRecord& record) {
    const json& doc = record.doc;
    const std::string command = doc.at("command");
    std::string out;

    if (command == "run") {
        out = "outcome_l,outcome_r,re,im,probability\n";
        for (const auto& a : doc.at("amplitudes")) {
            out += a.at("outcome_l").get<std::string>() + "," + a.at("outcome_r").get<std::string>() +
                   "," + format_real(a.at("re").get<double>()) + "," +
                   format_real(a.at("im").get<double>()) + "," +
                   format_real(a.at("probability").get<double>()) + "\n";
        }
    } else if (command == "sweep") {
        out = "phi1,phi3,e\n";
        for (const auto& row : doc.at("rows")) {
            out += format_real(row.at("phi1").get<double>()) + "," +
                   format_real(row.at("phi3").get<double>()) + "," +
                   format_real(row.at("e").get<double>()) + "\n";
        }
    } else if (command == "sample") {
        out = "outcome_l,outcome_r,count\n";
        for (const auto& e : doc.at("events")) {
            out += e.at("outcome_l").get<std::string>() + "," + e.at("outcome_r").get<std::string>() +
                   "," + std::to_string(e.at("count").get<std::uint64_t>()) + "\n";
        }
    } else if (command == "chsh") {
        const auto& st = doc.at("settings");
        const auto& terms = doc.at("terms");
        out = "a,a2,b,b2,e_ab,e_ab2,e_a2b,e_a2b2,s,local_bound\n";
        out += format_real(st.at("a").get<double>()) + "," + format_real(st.at("a2").get<double>()) +
               "," + format_real(st.at("b").get<double>()) + "," +
               format_real(st.at("b2").get<double>());
        for (const auto& term : terms) out += "," + format_real(term.at("e").get<double>());
        out += "," + format_real(doc.at("s").get<double>()) + "," +
               format_real(doc.at("local_bound").get<double>()) + "\n";
    } else if (command == "frames") {
        out = "frame,velocity,event,relation_to_L@BS1,available_phases\n";
        for (const char* frame : {"i1", "i2"}) {
            const double v = doc.at("frames").at(frame).at("velocity").get<double>();
            std::vector<double> phases =
                doc.at("available_phases").at(frame).get<std::vector<double>>();
            for (const auto& o : doc.at("orderings")) {
                if (o.at("frame") != frame) continue;
                out += std::string(frame) + "," + format_real(v) + "," +
                       o.at("event").get<std::string>() + "," + o.at("relation").get<std::string>() +
                       "," + join_phases(phases) + "\n";
            }
        }
    } else if (command == "ambiguity") {
        const auto& r = doc.at("report");
        const auto& ns = doc.at("no_signaling");
        out =
            "model,lambda,phases_i1,phases_i2,outcome_i1,outcome_i2,ambiguous,no_signaling_ok,"
            "max_marginal_deviation\n";
        out += doc.at("model").at("name").get<std::string>() + "," +
               format_real(doc.at("lambda").get<double>()) + "," +
               join_phases(r.at("phases_i1").get<std::vector<double>>()) + "," +
               join_phases(r.at("phases_i2").get<std::vector<double>>()) + "," +
               std::to_string(r.at("outcome_i1").get<int>()) + "," +
               std::to_string(r.at("outcome_i2").get<int>()) + "," +
               (r.at("ambiguous").get<bool>() ? "true" : "false") + "," +
               (ns.at("ok").get<bool>() ? "true" : "false") + "," +
               format_real(ns.at("max_deviation").get<double>()) + "\n";
    } else {
        throw std::logic_error("no CSV rendering for command '" + command + "'");
    }
    return out;
}

std::string render_table(const OutputRecord& record, bool color) {
    const json& doc = record.doc;
    const std::string command = doc.at("command");
    std::string out;

    if (command == "run") {
        out += heading("joint state (canonical global phase)", color);
        out += scenario_line(doc);
        out += pad("outcome", 12) + pad("amplitude", 34) + "probability\n";
        for (const auto& a : doc.at("amplitudes")) {
            const char l = a.at("outcome_l").get<std::string>()[0];
            const char r = a.at("outcome_r").get<std::string>()[0];
            const std::string outcome = mode_label(l, Side::L) + " " + mode_label(r, Side::R);
            const double re = a.at("re").get<double>();
            const double im = a.at("im").get<double>();
            const std::string amp =
                disp(re) + (im < 0 ? " - " : " + ") + disp(std::abs(im)) + "i";
            out += pad(outcome, 12) + pad(amp, 34) + disp(a.at("probability").get<double>()) +
                   "\n";
        }
    } else if (command == "sweep") {
        out += heading("correlation sweep", color);
        out += pad("phi1", 22) + pad("phi3", 22) + "E\n";
        for (const auto& row : doc.at("rows")) {
            out += pad(disp(row.at("phi1").get<double>()), 22) +
                   pad(disp(row.at("phi3").get<double>()), 22) +
                   disp(row.at("e").get<double>()) + "\n";
        }
    } else if (command == "sample") {
        out += heading("detection counts", color);
        out += scenario_line(doc);
        out += "seed " + std::to_string(doc.at("seed").get<std::uint64_t>()) + ", samples " +
               std::to_string(doc.at("samples").get<std::uint64_t>()) + "\n";
        out += pad("outcome", 12) + "count\n";
        for (const auto& e : doc.at("events")) {
            const char l = e.at("outcome_l").get<std::string>()[0];
            const char r = e.at("outcome_r").get<std::string>()[0];
            out += pad(mode_label(l, Side::L) + " " + mode_label(r, Side::R), 12) +
                   std::to_string(e.at("count").get<std::uint64_t>()) + "\n";
        }
    } else if (command == "chsh") {
        out += heading("CHSH score", color);
        const auto& st = doc.at("settings");
        out += "settings: a=" + disp(st.at("a").get<double>()) +
               " a2=" + disp(st.at("a2").get<double>()) +
               " b=" + disp(st.at("b").get<double>()) +
               " b2=" + disp(st.at("b2").get<double>()) + "\n";
        out += pad("phi1", 22) + pad("phi3", 22) + "E\n";
        for (const auto& term : doc.at("terms")) {
            out += pad(disp(term.at("phi1").get<double>()), 22) +
                   pad(disp(term.at("phi3").get<double>()), 22) +
                   disp(term.at("e").get<double>()) + "\n";
        }
        out += "S = " + disp(doc.at("s").get<double>()) +
               "  (local bound 2, quantum bound " +
               disp(doc.at("tsirelson_bound").get<double>()) + ")\n";
    } else if (command == "frames") {
        out += heading("frame analysis", color);
        out += scenario_line(doc);
        out += pad("event", 10) + pad("t", 10) + "x\n";
        for (const auto& e : doc.at("events")) {
            out += pad(e.at("label").get<std::string>(), 10) +
                   pad(disp(e.at("t").get<double>()), 10) +
                   disp(e.at("x").get<double>()) + "\n";
        }
        out += heading("intervals (dt^2 - dx^2)", color);
        for (const auto& iv : doc.at("intervals")) {
            out += iv.at("first").get<std::string>() + " vs " + iv.at("second").get<std::string>() +
                   ": " + iv.at("class").get<std::string>() + " (" +
                   disp(iv.at("value").get<double>()) + ")\n";
        }
        out += heading("frames", color);
        for (const char* frame : {"i1", "i2"}) {
            out += std::string(frame) +
                   ": v=" + disp(doc.at("frames").at(frame).at("velocity").get<double>());
            for (const auto& o : doc.at("orderings")) {
                if (o.at("frame") != frame) continue;
                out += "; " + o.at("event").get<std::string>() + " " +
                       o.at("relation").get<std::string>() + " L@BS1";
            }
            out += "; remote phases seen: {" +
                   disp_phases(doc.at("available_phases").at(frame).get<std::vector<double>>()) +
                   "}\n";
        }
    } else if (command == "ambiguity") {
        out += heading("frame-dependence of the remote-parameter set", color);
        out += scenario_line(doc);
        const auto& r = doc.at("report");
        out += "model: " + doc.at("model").at("name").get<std::string>() + "  " +
               doc.at("model").at("description").get<std::string>() +
               ", lambda=" + disp(doc.at("lambda").get<double>()) + "\n";
        out += "I1 (v=" + disp(doc.at("frames").at("i1").at("velocity").get<double>()) +
               "): phases {" + disp_phases(r.at("phases_i1").get<std::vector<double>>()) +
               "} -> outcome " + std::to_string(r.at("outcome_i1").get<int>()) + "\n";
        out += "I2 (v=" + disp(doc.at("frames").at("i2").at("velocity").get<double>()) +
               "): phases {" + disp_phases(r.at("phases_i2").get<std::vector<double>>()) +
               "} -> outcome " + std::to_string(r.at("outcome_i2").get<int>()) + "\n";
        out += std::string("outcome function is ") +
               (r.at("ambiguous").get<bool>() ? "FRAME-DEPENDENT (multi-valued)" : "frame-independent") +
               "\n";
        const auto& ns = doc.at("no_signaling");
        out += "observable marginals: max |P_L - 1/2| = " +
               disp(ns.at("max_deviation").get<double>()) + " over " +
               std::to_string(ns.at("grid_points").get<std::size_t>()) + " grid points -> " +
               (ns.at("ok").get<bool>() ? "no signaling" : "SIGNALING?!") + "\n";
    } else {
        throw std::logic_error("no table rendering for command '" + command + "'");
    }
    return out;
}

}  // namespace pathsim
