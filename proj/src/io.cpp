#include "botbuster/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "botbuster/format.hpp"

namespace botbuster {

namespace {

bool is_blank_or_comment(const std::string& line)
{
    for (char ch : line) {
        if (ch == '#') {
            return true;
        }
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            return false;
        }
    }
    return true;
}

std::string strip(std::string_view sv)
{
    while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.front()))) {
        sv.remove_prefix(1);
    }
    while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.back()))) {
        sv.remove_suffix(1);
    }
    return std::string(sv);
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(strip(std::string_view(line).substr(start)));
            break;
        }
        parts.push_back(strip(std::string_view(line).substr(start, pos - start)));
        start = pos + 1;
    }
    return parts;
}

[[noreturn]] void parse_fail(const std::string& name, std::size_t line_no, const std::string& why)
{
    fail(ErrorCategory::Parse, name + ":" + std::to_string(line_no) + ": " + why);
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out) {
        fail(ErrorCategory::Io, "cannot open '" + path + "' for writing");
    }
    return out;
}

std::ifstream open_in(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCategory::Io, "cannot open '" + path + "' for reading");
    }
    return in;
}

void write_echo(std::ostream& out, std::span<const std::pair<std::string, std::string>> echo)
{
    for (const auto& [key, value] : echo) {
        out << "# " << key << " = " << value << "\n";
    }
}

} // namespace

std::vector<TraceEvent> read_trace(std::istream& in, const std::string& name)
{
    std::vector<TraceEvent> events;
    std::string line;
    std::size_t line_no = 0;
    double last_time = 0.0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) {
            continue;
        }
        const auto parts = split(line, ',');
        if (parts.size() != 3) {
            parse_fail(name, line_no, "expected 'time,user,msg'");
        }
        TraceEvent ev;
        try {
            ev.time = parse_double(parts[0], "time");
            ev.user = static_cast<std::uint32_t>(parse_u64(parts[1], "user"));
            ev.msg = parse_u64(parts[2], "msg");
        } catch (const Error& e) {
            parse_fail(name, line_no, e.what());
        }
        if (ev.time < 0.0) {
            parse_fail(name, line_no, "negative event time");
        }
        if (ev.time < last_time) {
            parse_fail(name, line_no, "events not sorted by time");
        }
        last_time = ev.time;
        events.push_back(ev);
    }
    return events;
}

std::vector<TraceEvent> read_trace_file(const std::string& path)
{
    auto in = open_in(path);
    return read_trace(in, path);
}

void write_trace(std::ostream& out, std::span<const TraceEvent> events,
                 std::span<const std::pair<std::string, std::string>> echo)
{
    write_echo(out, echo);
    for (const auto& ev : events) {
        out << format_double(ev.time) << ',' << ev.user << ',' << ev.msg << "\n";
    }
}

void write_trace_file(const std::string& path, std::span<const TraceEvent> events,
                      std::span<const std::pair<std::string, std::string>> echo)
{
    auto out = open_out(path);
    write_trace(out, events, echo);
}

void write_labels_file(const std::string& path, std::span<const UserLabel> labels,
                       std::span<const std::pair<std::string, std::string>> echo)
{
    auto out = open_out(path);
    write_echo(out, echo);
    out << "user,label\n";
    for (std::size_t u = 0; u < labels.size(); ++u) {
        out << u << ',' << (labels[u] == UserLabel::Bot ? "bot" : "normal") << "\n";
    }
}

std::vector<UserLabel> read_labels_file(const std::string& path)
{
    auto in = open_in(path);
    std::vector<UserLabel> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line) || line == "user,label") {
            continue;
        }
        const auto parts = split(line, ',');
        if (parts.size() != 2) {
            parse_fail(path, line_no, "expected 'user,label'");
        }
        const std::uint64_t user = parse_u64(parts[0], "user");
        if (user != labels.size()) {
            parse_fail(path, line_no, "label rows must be dense and in order");
        }
        if (parts[1] == "bot") {
            labels.push_back(UserLabel::Bot);
        } else if (parts[1] == "normal") {
            labels.push_back(UserLabel::Normal);
        } else {
            parse_fail(path, line_no, "label must be 'bot' or 'normal'");
        }
    }
    return labels;
}

std::map<std::string, std::string> read_key_values(const std::string& path)
{
    auto in = open_in(path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            parse_fail(path, line_no, "expected 'key = value'");
        }
        const std::string key = strip(std::string_view(line).substr(0, eq));
        const std::string value = strip(std::string_view(line).substr(eq + 1));
        if (key.empty()) {
            parse_fail(path, line_no, "empty key");
        }
        kv[key] = value;
    }
    return kv;
}

void apply_sim_key(SimConfig& cfg, const std::string& key, const std::string& value)
{
    if (key == "botnet.size") {
        cfg.botnet.size = static_cast<std::uint32_t>(parse_u64(value, key));
    } else if (key == "botnet.scheduling") {
        if (value == "synchronous") {
            cfg.botnet.scheduling = Scheduling::Synchronous;
        } else if (value == "poisson") {
            cfg.botnet.scheduling = Scheduling::Poisson;
        } else {
            fail(ErrorCategory::Config, "scheduling must be 'synchronous' or 'poisson'");
        }
    } else if (key == "botnet.rate") {
        cfg.botnet.rate = parse_double(value, key);
    } else if (key == "botnet.alpha") {
        cfg.botnet.dictionary.alpha = parse_double(value, key);
    } else if (key == "botnet.e0") {
        cfg.botnet.dictionary.e0 = parse_u64(value, key);
    } else if (key == "normal.count") {
        cfg.normal.count = static_cast<std::uint32_t>(parse_u64(value, key));
    } else if (key == "normal.rate") {
        cfg.normal.rate = parse_double(value, key);
    } else if (key == "normal.private_rate") {
        cfg.normal.private_rate = parse_double(value, key);
    } else if (key == "normal.shared_rate") {
        cfg.normal.shared_rate = parse_double(value, key);
    } else if (key == "normal.p_share") {
        cfg.normal.p_share = parse_double(value, key);
    } else if (key == "horizon") {
        cfg.horizon = parse_double(value, key);
    } else if (key == "seed") {
        cfg.seed = parse_u64(value, key);
    } else {
        fail(ErrorCategory::Config, "unknown config key '" + key + "'");
    }
}

Subnet parse_subnet(const std::string& spec)
{
    Subnet subnet;
    for (const auto& item : split(spec, ',')) {
        if (item.empty()) {
            fail(ErrorCategory::Parse, "empty item in subnet spec '" + spec + "'");
        }
        const std::size_t dash = item.find('-');
        if (dash == std::string::npos) {
            subnet.members.push_back(static_cast<std::uint32_t>(parse_u64(item, "user index")));
        } else {
            const auto lo = parse_u64(item.substr(0, dash), "range start");
            const auto hi = parse_u64(item.substr(dash + 1), "range end");
            if (hi < lo) {
                fail(ErrorCategory::Parse, "descending range in subnet spec '" + item + "'");
            }
            for (std::uint64_t u = lo; u <= hi; ++u) {
                subnet.members.push_back(static_cast<std::uint32_t>(u));
            }
        }
    }
    std::sort(subnet.members.begin(), subnet.members.end());
    subnet.members.erase(std::unique(subnet.members.begin(), subnet.members.end()),
                         subnet.members.end());
    if (subnet.members.empty()) {
        fail(ErrorCategory::Parse, "subnet spec '" + spec + "' is empty");
    }
    return subnet;
}

std::vector<double> parse_grid(const std::string& spec)
{
    std::vector<double> grid;
    if (spec.find(':') != std::string::npos) {
        const auto parts = split(spec, ':');
        if (parts.size() != 3) {
            fail(ErrorCategory::Parse, "grid spec must be start:step:end");
        }
        const double start = parse_double(parts[0], "grid start");
        const double step = parse_double(parts[1], "grid step");
        const double end = parse_double(parts[2], "grid end");
        if (!(step > 0.0) || !(start > 0.0) || end < start) {
            fail(ErrorCategory::Parse, "grid requires start > 0, step > 0, end >= start");
        }
        for (std::uint64_t k = 0;; ++k) {
            const double t = start + step * static_cast<double>(k);
            if (t > end + 1e-9 * step) {
                break;
            }
            grid.push_back(t);
        }
    } else {
        for (const auto& item : split(spec, ',')) {
            grid.push_back(parse_double(item, "grid time"));
        }
    }
    if (grid.empty() || !std::is_sorted(grid.begin(), grid.end()) || !(grid.front() > 0.0)) {
        fail(ErrorCategory::Parse, "grid times must be positive and ascending");
    }
    return grid;
}

} // namespace botbuster
