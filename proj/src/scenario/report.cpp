#include "transgress/errors.hpp"
#include "transgress/scenario.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace transgress {

namespace {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::string report_json(const Report& report) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["scenario"] = report.scenario;
    doc["description"] = report.description;
    doc["manifold"] = report.manifold;
    doc["volume_form"] = report.volume_form;
    doc["seed"] = report.seed;
    doc["tol_scale"] = report.tol_scale;
    ordered_json checks = ordered_json::array();
    std::size_t passed = 0;
    for (const CheckRecord& r : report.records) {
        ordered_json c;
        c["name"] = r.name;
        c["op"] = r.op;
        c["anchor"] = r.anchor;
        c["provenance"] = r.provenance;
        c["resolutions"] = r.resolutions;
        c["values"] = r.values;
        c["defects"] = r.defects;
        c["expected"] = r.expected ? ordered_json(*r.expected) : ordered_json(nullptr);
        c["defect"] = r.defect;
        c["compare"] = r.compare;
        c["tolerance"] = r.tolerance;
        c["monotone"] = r.monotone ? ordered_json(*r.monotone) : ordered_json(nullptr);
        c["pass"] = r.pass;
        if (!r.error.empty()) c["error"] = r.error;
        checks.push_back(std::move(c));
        passed += r.pass ? 1 : 0;
    }
    doc["checks"] = std::move(checks);
    doc["summary"] = {{"checks", report.records.size()},
                      {"passed", passed},
                      {"failed", report.records.size() - passed},
                      {"status", report.all_passed() ? "pass" : "fail"}};
    return doc.dump(2) + "\n";
}

std::string check_csv(const CheckRecord& record) {
    std::ostringstream os;
    os << "resolution,value,defect\n";
    for (std::size_t i = 0; i < record.values.size(); ++i)
        os << record.resolutions[i] << ',' << format_double(record.values[i]) << ',' << format_double(record.defects[i])
           << '\n';
    return os.str();
}

void write_report(const Report& report, const std::string& path) {
    namespace fs = std::filesystem;
    const fs::path out(path);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    auto write = [](const fs::path& p, const std::string& text) {
        std::ofstream f(p, std::ios::binary);
        if (!f) throw Error("cannot write " + p.string());
        f << text;
    };
    write(out, report_json(report));
    const fs::path stem = out.parent_path() / out.stem();
    for (const CheckRecord& r : report.records) write(stem.string() + "." + r.name + ".csv", check_csv(r));
}

}  // namespace transgress
