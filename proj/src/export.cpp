#include "shrinkpath/export.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace shrinkpath {

namespace {

using nlohmann::json;

json number_or_inf(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

json series_to_json(const std::vector<Vector>& series) {
    json rows = json::array();
    for (const Vector& row : series) {
        json r = json::array();
        for (double v : row) r.push_back(number_or_inf(v));
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string render_series_csv(const TraceBundle& bundle,
                              const std::vector<std::string>& headers,
                              const std::vector<Vector>& series) {
    std::ostringstream out;
    out << "m";
    for (const auto& h : headers) out << ',' << h;
    out << '\n';
    for (std::size_t i = 0; i < bundle.size(); ++i) {
        out << format_double(bundle.path.lattice[i]);
        for (double v : series[i]) out << ',' << format_double(v);
        out << '\n';
    }
    return out.str();
}

std::vector<std::string> indexed_headers(const std::string& stem, std::size_t p) {
    std::vector<std::string> h;
    for (std::size_t j = 1; j <= p; ++j) h.push_back(stem + std::to_string(j));
    return h;
}

}  // namespace

ExportFormat parse_export_format(const std::string& s) {
    if (s == "csv") return ExportFormat::csv;
    if (s == "json") return ExportFormat::json;
    throw std::invalid_argument("unknown export format: '" + s + "' (expected csv|json)");
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << contents;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() +
                                 ": " + ec.message());
}

std::string traces_to_json(const TraceBundle& bundle,
                           const std::vector<std::string>& coef_names) {
    const ShrinkagePath& path = bundle.path;
    json doc;
    doc["kind"] = to_string(path.kind);
    doc["p"] = path.p;
    doc["steps"] = path.steps;
    doc["mode"] = to_string(bundle.mode);
    doc["mStar"] = path.m_star;
    doc["degenerateKnot"] = path.degenerate_knot;
    doc["names"] = coef_names;

    json delta_star = json::array();
    for (double v : path.delta_star) delta_star.push_back(v);
    doc["deltaStar"] = std::move(delta_star);

    json lattice = json::array();
    for (double m : path.lattice) lattice.push_back(m);
    doc["lattice"] = std::move(lattice);

    doc["coef"] = series_to_json(bundle.coef);
    doc["spat"] = series_to_json(bundle.spat);
    doc["rmse"] = series_to_json(bundle.rmse);
    doc["exev"] = series_to_json(bundle.exev);

    json infd = json::array();
    for (const auto& row : bundle.infd) {
        if (!row) {
            infd.push_back(nullptr);
        } else {
            json r = json::array();
            for (double v : *row) r.push_back(v);
            infd.push_back(std::move(r));
        }
    }
    doc["infd"] = std::move(infd);

    json lr = json::array();
    for (double v : bundle.lr) lr.push_back(number_or_inf(v));
    doc["lr"] = std::move(lr);

    if (path.q) doc["q"] = *path.q;
    if (!path.k_values.empty()) {
        json ks = json::array();
        for (double k : path.k_values) ks.push_back(number_or_inf(k));
        doc["kValues"] = std::move(ks);
    }
    if (path.kind == PathKind::yonx) {
        json lines = json::array();
        for (const FittedLine& ln : path.display_lines)
            lines.push_back({{"m", ln.m}, {"slope", ln.slope}, {"intercept", ln.intercept}});
        doc["displayLines"] = std::move(lines);
    }
    return doc.dump(2) + "\n";
}

std::vector<std::filesystem::path> export_traces(const TraceBundle& bundle,
                                                 const std::vector<std::string>& coef_names,
                                                 ExportFormat format,
                                                 const std::filesystem::path& dest_dir) {
    if (coef_names.size() != bundle.path.p)
        throw std::invalid_argument("export_traces: coefficient name count mismatch");
    std::filesystem::create_directories(dest_dir);

    std::vector<std::filesystem::path> written;
    if (format == ExportFormat::json) {
        const auto dest = dest_dir / "traces.json";
        write_file_atomic(dest, traces_to_json(bundle, coef_names));
        written.push_back(dest);
        return written;
    }

    const std::size_t p = bundle.path.p;
    auto emit = [&](const std::string& stem, const std::string& body) {
        const auto dest = dest_dir / (stem + ".csv");
        write_file_atomic(dest, body);
        written.push_back(dest);
    };

    emit("coef", render_series_csv(bundle, coef_names, bundle.coef));
    emit("spat", render_series_csv(bundle, coef_names, bundle.spat));
    emit("rmse", render_series_csv(bundle, coef_names, bundle.rmse));
    emit("exev", render_series_csv(bundle, indexed_headers("ev", p), bundle.exev));

    // infd: absent rows stay empty past the m column
    {
        std::ostringstream out;
        out << "m";
        for (const auto& h : indexed_headers("infd", p)) out << ',' << h;
        out << '\n';
        for (std::size_t i = 0; i < bundle.size(); ++i) {
            out << format_double(bundle.path.lattice[i]);
            if (bundle.infd[i]) {
                for (double v : *bundle.infd[i]) out << ',' << format_double(v);
            } else {
                for (std::size_t j = 0; j < p; ++j) out << ',';
            }
            out << '\n';
        }
        emit("infd", out.str());
    }

    {
        std::ostringstream out;
        out << "m,neg2logLR\n";
        for (std::size_t i = 0; i < bundle.size(); ++i)
            out << format_double(bundle.path.lattice[i]) << ','
                << format_double(bundle.lr[i]) << '\n';
        emit("lr", out.str());
    }
    return written;
}

}  // namespace shrinkpath
