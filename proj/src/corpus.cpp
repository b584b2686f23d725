#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lexkg/corpus.hpp"
#include "lexkg/errors.hpp"
#include "lexkg/validator.hpp"

namespace lexkg::corpus {

std::string_view to_string(CorpusFormat f) noexcept { return f == CorpusFormat::jsonl ? "jsonl" : "txt-dir"; }

CorpusFormat detect_format(const fs::path& path) {
    return fs::is_directory(path) ? CorpusFormat::txt_dir : CorpusFormat::jsonl;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error reading " + path.string());
    return buf.str();
}

void write_file(const fs::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("error writing " + path.string());
}

namespace {

bool blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::optional<std::string> checked_date(const std::string& d) {
    long y = 0;
    int m = 0, day = 0;
    if (d.size() != 10 || d[4] != '-' || d[7] != '-') return std::nullopt;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(d[i]))) return std::nullopt;
    y = std::stol(d.substr(0, 4));
    m = std::stoi(d.substr(5, 2));
    day = std::stoi(d.substr(8, 2));
    if (y == 0 || !validation::is_valid_calendar_date(y, m, day)) return std::nullopt;
    return d;
}

std::vector<DocumentRecord> ingest_jsonl(const fs::path& path) {
    if (!fs::is_regular_file(path)) throw IoError("corpus file not found: " + path.string());
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::vector<DocumentRecord> out;
    std::set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (blank(line)) continue;
        const std::string where = path.string() + ":" + std::to_string(lineno) + ": ";
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw MalformedRecord(where + "not a JSON object");
        if (!j.contains("id") || !j["id"].is_string()) throw MalformedRecord(where + "missing string field 'id'");
        if (!j.contains("text") || !j["text"].is_string())
            throw MalformedRecord(where + "missing string field 'text'");
        DocumentRecord rec;
        rec.id = j["id"].get<std::string>();
        rec.text = j["text"].get<std::string>();
        try {
            check_document_id(rec.id);
        } catch (const MalformedRecord& e) {
            throw MalformedRecord(where + e.what());
        }
        if (blank(rec.text)) throw MalformedRecord(where + "empty text for document '" + rec.id + "'");
        if (j.contains("date") && !j["date"].is_null()) {
            if (!j["date"].is_string()) throw MalformedRecord(where + "'date' must be a string");
            rec.date = checked_date(j["date"].get<std::string>());
            if (!rec.date) throw MalformedRecord(where + "'date' is not a valid YYYY-MM-DD date");
        }
        rec.source_path = path.string();
        if (!seen.insert(rec.id).second) throw DuplicateId(rec.id);
        out.push_back(std::move(rec));
    }
    if (out.empty()) throw EmptyCorpus("corpus " + path.string() + " contains no records");
    return out;
}

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    return out + "'";
}

std::string replace_all(std::string text, std::string_view from, const std::string& to) {
    for (std::size_t pos = 0; (pos = text.find(from, pos)) != std::string::npos; pos += to.size())
        text.replace(pos, from.size(), to);
    return text;
}

std::string run_pdf_extractor(const std::string& command, const fs::path& pdf) {
    fs::path out = fs::temp_directory_path() /
                   ("lexkg-pdf-" + std::to_string(std::hash<std::string>{}(pdf.string())) + ".txt");
    std::string cmd = replace_all(command, "{in}", shell_quote(pdf.string()));
    cmd = replace_all(cmd, "{out}", shell_quote(out.string()));
    const int rc = std::system(cmd.c_str());
    if (rc != 0) {
        std::error_code ec;
        fs::remove(out, ec);
        throw IoError("pdf extractor failed (status " + std::to_string(rc) + ") for " + pdf.string());
    }
    std::string text = read_file(out);
    std::error_code ec;
    fs::remove(out, ec);
    return text;
}

std::vector<DocumentRecord> ingest_dir(const fs::path& dir, const IngestOptions& options) {
    if (!fs::is_directory(dir)) throw IoError("corpus directory not found: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const auto ext = entry.path().extension();
        if (ext == ".txt" || (ext == ".pdf" && options.pdf_extractor)) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw EmptyCorpus("no .txt files under " + dir.string());

    std::vector<DocumentRecord> out;
    std::set<std::string> seen;
    for (const auto& f : files) {
        DocumentRecord rec;
        rec.id = f.stem().string();
        try {
            check_document_id(rec.id);
        } catch (const MalformedRecord& e) {
            throw MalformedRecord(f.string() + ": " + e.what());
        }
        if (!seen.insert(rec.id).second) throw DuplicateId(rec.id);
        rec.text = f.extension() == ".pdf" ? run_pdf_extractor(*options.pdf_extractor, f) : read_file(f);
        if (blank(rec.text)) throw MalformedRecord(f.string() + ": document is empty");
        rec.source_path = f.string();
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace

void check_document_id(const std::string& id) {
    if (id.empty()) throw MalformedRecord("document id is empty");
    if (id == "." || id == "..") throw MalformedRecord("document id '" + id + "' is not a valid file name");
    for (unsigned char c : id)
        if (c < 0x20 || c == 0x7F || c == '/' || c == '\\')
            throw MalformedRecord("document id '" + id + "' contains a path separator or control character");
}

std::vector<DocumentRecord> ingest_corpus(const fs::path& path, CorpusFormat format, const IngestOptions& options) {
    return format == CorpusFormat::jsonl ? ingest_jsonl(path) : ingest_dir(path, options);
}

}  // namespace lexkg::corpus
