#include "stratres/serialize.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "stratres/errors.hpp"

namespace stratres {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& field, const char* context) {
    double v = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end)
        fail(ErrorCode::BadParams, std::string(context) + ": bad numeric field '" + field + "'");
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(line);
    while (std::getline(ss, cur, ',')) out.push_back(cur);
    return out;
}

} // namespace

std::string profile_to_csv(const RadialProfile& profile) {
    std::string out = "r,u,du\n";
    for (const RadialState& s : profile.samples) {
        out += format_double(s.r);
        out += ',';
        out += format_double(s.u);
        out += ',';
        out += format_double(s.p);
        out += '\n';
    }
    return out;
}

RadialProfile profile_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("r,u,du", 0) != 0)
        fail(ErrorCode::BadParams, "profile csv: missing 'r,u,du' header");
    RadialProfile prof;
    prof.provenance = Provenance::Shape;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3) fail(ErrorCode::BadParams, "profile csv: expected 3 fields");
        prof.samples.push_back({parse_double(fields[0], "profile csv"),
                                parse_double(fields[1], "profile csv"),
                                parse_double(fields[2], "profile csv")});
    }
    prof.validate();
    return prof;
}

std::string orbit_to_csv(const Orbit& orbit) {
    std::string out = "tau,x,theta,y\n";
    for (std::size_t i = 0; i < orbit.tau.size(); ++i) {
        out += format_double(orbit.tau[i]);
        out += ',';
        out += format_double(orbit.states[i].x);
        out += ',';
        out += format_double(orbit.states[i].theta);
        out += ',';
        out += format_double(orbit.states[i].y);
        out += '\n';
    }
    return out;
}

std::string demo_table_to_csv(const std::vector<ConeDemoRow>& rows) {
    std::string out = "lambda,E,err\n";
    for (const ConeDemoRow& row : rows) {
        out += format_double(row.lambda);
        out += ',';
        out += format_double(row.resistance);
        out += ',';
        out += format_double(row.error_est);
        out += '\n';
    }
    return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::BadParams, "cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) fail(ErrorCode::BadParams, "short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        fail(ErrorCode::BadParams, "rename to " + path.string() + " failed: " + ec.message());
    }
}

} // namespace stratres
