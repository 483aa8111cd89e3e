#include "synabs/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace synabs {

namespace {

// one CSV record; quoted fields may contain commas, doubled quotes and newlines
bool read_record(std::istream& in, std::vector<std::string>& fields, std::size_t& line) {
    fields.clear();
    std::string cur;
    bool quoted = false, any = false;
    char c;
    while (in.get(c)) {
        any = true;
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    cur += '"';
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c == '\n') {
            ++line;
            break;
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (!any) return false;
    if (quoted) throw FormatError("unterminated quote", line);
    fields.push_back(cur);
    return true;
}

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

EventLog read_csv(std::istream& in, bool attribute_identity) {
    std::vector<std::string> header, row;
    std::size_t line = 1;
    if (!read_record(in, header, line)) throw FormatError("missing header", 1);
    for (auto& h : header) h = trim(h);
    if (!header.empty() && header[0].rfind("\xef\xbb\xbf", 0) == 0) header[0].erase(0, 3);
    auto col = [&](const std::string& name) -> long {
        auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : it - header.begin();
    };
    long c_case = col("case"), c_act = col("activity"), c_ts = col("timestamp");
    if (c_case < 0 || c_act < 0) throw FormatError("header needs 'case' and 'activity' columns", 1);

    struct Row {
        std::string ts;
        std::size_t order;
        Event ev;
    };
    std::vector<std::string> case_order;
    std::map<std::string, std::vector<Row>> cases;
    std::size_t n = 0;
    while (true) {
        std::size_t at = line;
        if (!read_record(in, row, line)) break;
        if (row.size() == 1 && trim(row[0]).empty()) continue;
        if (row.size() != header.size())
            throw FormatError("expected " + std::to_string(header.size()) + " fields, got " + std::to_string(row.size()),
                              at);
        Row r{c_ts >= 0 ? row[c_ts] : "", n++, {trim(row[c_act]), {}}};
        if (r.ev.activity.empty()) throw FormatError("empty activity", at);
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (static_cast<long>(i) == c_case || static_cast<long>(i) == c_act) continue;
            std::string key = header[i].rfind("attr:", 0) == 0 ? header[i].substr(5) : header[i];
            if (!row[i].empty()) r.ev.attributes[key] = row[i];
        }
        std::string id = trim(row[c_case]);
        if (!cases.count(id)) case_order.push_back(id);
        cases[id].push_back(std::move(r));
    }
    EventLog log(attribute_identity);
    for (const auto& id : case_order) {
        auto& rows = cases[id];
        if (c_ts >= 0)
            std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.ts < b.ts; });
        Trace t;
        for (auto& r : rows) t.push_back(std::move(r.ev));
        log.add(std::move(t));
    }
    return log;
}

void write_csv(std::ostream& out, const EventLog& log) {
    std::set<std::string> keys;
    for (const auto& e : log.entries())
        for (const auto& ev : e.trace)
            for (const auto& [k, v] : ev.attributes) keys.insert(k);
    out << "case,activity";
    for (const auto& k : keys) out << ',' << quote(k);
    out << '\n';
    std::uint64_t id = 0;
    for (const auto& e : log.entries())
        for (std::uint64_t c = 0; c < e.count; ++c) {
            ++id;
            for (const auto& ev : e.trace) {
                out << 'c' << id << ',' << quote(ev.activity);
                for (const auto& k : keys) {
                    auto it = ev.attributes.find(k);
                    out << ',';
                    if (it != ev.attributes.end()) out << quote(it->second);
                }
                out << '\n';
            }
        }
}

EventLog read_compact(std::istream& in) {
    EventLog log;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw.substr(0, raw.find('#')));
        if (s.empty()) continue;
        std::uint64_t count = 1;
        if (s[0] == 'x' && s.size() > 1 && std::isdigit(static_cast<unsigned char>(s[1]))) {
            auto sp = s.find_first_of(" \t");
            std::string num = s.substr(1, sp == std::string::npos ? std::string::npos : sp - 1);
            try {
                std::size_t used = 0;
                count = std::stoull(num, &used);
                if (used != num.size() || count == 0) throw std::invalid_argument(num);
            } catch (const std::exception&) {
                throw FormatError("bad multiplicity '" + num + "'", line);
            }
            s = sp == std::string::npos ? "" : trim(s.substr(sp));
        }
        Word w;
        if (s != "<>") {
            if (s.empty()) throw FormatError("missing trace", line);
            std::stringstream ss(s);
            std::string a;
            while (std::getline(ss, a, ',')) {
                a = trim(a);
                if (a.empty()) throw FormatError("empty activity", line);
                w.push_back(a);
            }
        }
        log.add(w, count);
    }
    return log;
}

void write_compact(std::ostream& out, const EventLog& log) {
    for (const auto& [w, n] : log.variants()) {
        if (n != 1) out << 'x' << n << ' ';
        if (w.empty()) out << "<>";
        for (std::size_t i = 0; i < w.size(); ++i) out << (i ? "," : "") << w[i];
        out << '\n';
    }
}

namespace {

bool is_csv(const std::string& path) { return path.size() >= 4 && path.substr(path.size() - 4) == ".csv"; }

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return in;
}

std::string slurp(const std::string& path) {
    auto in = open_in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

EventLog read_log_file(const std::string& path, bool attribute_identity) {
    auto in = open_in(path);
    return is_csv(path) ? read_csv(in, attribute_identity) : read_compact(in);
}

void write_log_file(const std::string& path, const EventLog& log) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    if (is_csv(path))
        write_csv(out, log);
    else
        write_compact(out, log);
}

ProcessTree read_tree_file(const std::string& path) {
    std::string text = slurp(path), clean;
    std::stringstream ss(text);
    std::string l;
    while (std::getline(ss, l)) clean += l.substr(0, l.find('#')) + '\n';
    return parse_tree(clean);
}

AggSpec parse_agg_spec(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SpecError(std::string("bad spec JSON: ") + e.what());
    }
    if (!j.is_object()) throw SpecError("spec must be a JSON object");
    AggSpec spec;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "w_t") {
            if (it->is_string())
                spec.w_t = parse_rational(it->get<std::string>());
            else if (it->is_number_integer())
                spec.w_t = Rational(it->get<long long>());
            else
                throw SpecError("w_t must be a fraction string such as \"1/2\"");
            continue;
        }
        if (!it->is_array()) throw SpecError("group '" + it.key() + "' must be an array of activity names");
        auto& g = spec.groups[it.key()];
        for (const auto& a : *it) {
            if (!a.is_string()) throw SpecError("group '" + it.key() + "' holds a non-string");
            g.insert(a.get<std::string>());
        }
    }
    return spec;
}

std::string agg_spec_to_json(const AggSpec& spec) {
    nlohmann::ordered_json j;
    for (const auto& [x, members] : spec.groups) j[x] = std::vector<std::string>(members.begin(), members.end());
    j["w_t"] = format_rational(spec.w_t);
    return j.dump(2);
}

AggSpec read_agg_spec_file(const std::string& path) { return parse_agg_spec(slurp(path)); }

}  // namespace synabs
