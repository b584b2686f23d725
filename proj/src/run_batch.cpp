#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <ctime>
#include <deque>
#include <mutex>
#include <set>
#include <thread>

#include <json.hpp>

#include "lexkg/corpus.hpp"
#include "lexkg/errors.hpp"
#include "lexkg/turtle.hpp"

namespace lexkg::corpus {

using ojson = nlohmann::ordered_json;

std::string_view to_string(DocStatus s) noexcept {
    switch (s) {
        case DocStatus::pending: return "pending";
        case DocStatus::running: return "running";
        case DocStatus::valid: return "valid";
        case DocStatus::invalid: return "invalid";
        case DocStatus::parse_failed: return "parse_failed";
        case DocStatus::backend_failed: return "backend_failed";
    }
    return "?";
}

std::optional<DocStatus> doc_status_from_string(std::string_view s) noexcept {
    for (DocStatus st : {DocStatus::pending, DocStatus::running, DocStatus::valid, DocStatus::invalid,
                         DocStatus::parse_failed, DocStatus::backend_failed})
        if (to_string(st) == s) return st;
    return std::nullopt;
}

bool is_terminal(DocStatus s) noexcept { return s != DocStatus::pending && s != DocStatus::running; }

namespace {

DocStatus from_extraction(extract::Status s) {
    switch (s) {
        case extract::Status::valid: return DocStatus::valid;
        case extract::Status::invalid: return DocStatus::invalid;
        case extract::Status::parse_failed: return DocStatus::parse_failed;
        case extract::Status::backend_failed: return DocStatus::backend_failed;
    }
    return DocStatus::backend_failed;
}

std::string now_utc() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string dump(const ojson& j) { return j.dump(2, ' ', false, ojson::error_handler_t::replace) + "\n"; }

}  // namespace

RunTotals RunState::totals() const {
    RunTotals t;
    t.documents = docs.size();
    for (const auto& [id, d] : docs) {
        ++t.by_status[d.status];
        t.cost += d.cost;
    }
    return t;
}

std::string RunState::to_json() const {
    const RunTotals t = totals();
    ojson j;
    j["version"] = 1;
    j["fingerprint"] = fingerprint;
    j["model"] = model;
    j["started_at"] = started_at;
    j["updated_at"] = updated_at;
    ojson totals_j;
    totals_j["documents"] = t.documents;
    for (DocStatus st : {DocStatus::pending, DocStatus::running, DocStatus::valid, DocStatus::invalid,
                         DocStatus::parse_failed, DocStatus::backend_failed}) {
        auto it = t.by_status.find(st);
        totals_j[std::string(to_string(st))] = it == t.by_status.end() ? 0 : it->second;
    }
    totals_j["input_tokens"] = t.cost.input_tokens;
    totals_j["output_tokens"] = t.cost.output_tokens;
    totals_j["requests"] = t.cost.requests;
    totals_j["cost_usd"] = t.cost.cost.to_string(6);
    j["totals"] = totals_j;
    ojson docs_j = ojson::object();
    for (const auto& [id, d] : docs) {
        ojson dj;
        dj["status"] = to_string(d.status);
        dj["attempts"] = d.attempts;
        dj["input_tokens"] = d.cost.input_tokens;
        dj["output_tokens"] = d.cost.output_tokens;
        dj["requests"] = d.cost.requests;
        dj["cost_picodollars"] = d.cost.cost.picodollars();
        if (!d.error.empty()) dj["error"] = d.error;
        if (!d.io_errors.empty()) dj["io_errors"] = d.io_errors;
        docs_j[id] = dj;
    }
    j["documents"] = docs_j;
    return dump(j);
}

RunState RunState::from_json(std::string_view text) {
    auto j = nlohmann::json::parse(text.begin(), text.end(), nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw MalformedRecord("run state is not a JSON object");
    auto str = [&](const nlohmann::json& o, const char* key) -> std::string {
        if (!o.contains(key)) return {};
        if (!o[key].is_string()) throw MalformedRecord(std::string("run state field '") + key + "' must be a string");
        return o[key].get<std::string>();
    };
    auto num = [&](const nlohmann::json& o, const char* key) -> std::size_t {
        if (!o.contains(key)) return 0;
        if (!o[key].is_number_unsigned())
            throw MalformedRecord(std::string("run state field '") + key + "' must be a non-negative integer");
        return o[key].get<std::size_t>();
    };
    RunState s;
    s.fingerprint = str(j, "fingerprint");
    s.model = str(j, "model");
    s.started_at = str(j, "started_at");
    s.updated_at = str(j, "updated_at");
    if (j.contains("documents")) {
        if (!j["documents"].is_object()) throw MalformedRecord("run state 'documents' must be an object");
        for (const auto& [id, dj] : j["documents"].items()) {
            if (!dj.is_object()) throw MalformedRecord("run state entry '" + id + "' must be an object");
            DocState d;
            auto st = doc_status_from_string(str(dj, "status"));
            if (!st) throw MalformedRecord("run state entry '" + id + "' has an unknown status");
            d.status = *st;
            d.attempts = num(dj, "attempts");
            d.cost.input_tokens = num(dj, "input_tokens");
            d.cost.output_tokens = num(dj, "output_tokens");
            d.cost.requests = num(dj, "requests");
            if (dj.contains("cost_picodollars")) {
                if (!dj["cost_picodollars"].is_number_integer())
                    throw MalformedRecord("run state field 'cost_picodollars' must be an integer");
                d.cost.cost = extract::UsdAmount::from_picodollars(dj["cost_picodollars"].get<std::int64_t>());
            }
            d.error = str(dj, "error");
            if (dj.contains("io_errors") && dj["io_errors"].is_array())
                for (const auto& e : dj["io_errors"])
                    if (e.is_string()) d.io_errors.push_back(e.get<std::string>());
            s.docs.emplace(id, std::move(d));
        }
    }
    return s;
}

std::string config_fingerprint(std::string_view ontology_text, std::string_view rules_text, std::string_view model_id) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&](std::string_view part) {
        for (unsigned char c : part) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        h ^= 0xFF;  // separator byte that cannot occur in UTF-8
        h *= 0x100000001b3ULL;
    };
    feed(ontology_text);
    feed(rules_text);
    feed(model_id);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunState load_run_state(const fs::path& path) { return RunState::from_json(read_file(path)); }

void save_run_state(const fs::path& path, const RunState& state) {
    fs::path tmp = path;
    tmp += ".tmp";
    write_file(tmp, state.to_json());
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot replace " + path.string() + ": " + ec.message());
}

fs::path RunConfig::resolved_state_path() const {
    return state_path.empty() ? output_dir / "run-state.json" : state_path;
}

void RunConfig::validate() const {
    if (max_inflight < 1) throw ConfigError("max_inflight must be at least 1");
    if (output_dir.empty()) throw ConfigError("output directory must be set");
    if (extraction.backoff_initial_seconds < 0) throw ConfigError("backoff must be non-negative");
    if (extraction.prices.input_per_million < 0 || extraction.prices.output_per_million < 0)
        throw ConfigError("prices must be non-negative");
}

namespace {

std::string outcome_json(const extract::ExtractionOutcome& o) {
    ojson j;
    j["doc_id"] = o.doc_id;
    j["status"] = extract::to_string(o.status);
    j["attempts"] = o.attempts.size();
    if (!o.error.empty()) j["error"] = o.error;
    j["input_tokens"] = o.cost.input_tokens;
    j["output_tokens"] = o.cost.output_tokens;
    j["requests"] = o.cost.requests;
    j["cost_usd"] = o.cost.cost.to_string(6);
    ojson list = ojson::array();
    for (std::size_t i = 0; i < o.attempts.size(); ++i) {
        const auto& a = o.attempts[i];
        ojson aj;
        aj["attempt"] = i + 1;
        if (a.parse_error) {
            aj["parse_error"] = {{"line", a.parse_error->line()},
                                 {"column", a.parse_error->column()},
                                 {"message", a.parse_error->message()}};
        }
        if (a.report) aj["validation"] = ojson::parse(a.report->to_json());
        list.push_back(aj);
    }
    j["attempt_log"] = list;
    return dump(j);
}

struct Job {
    const DocumentRecord* doc;
};

struct Result {
    std::string doc_id;
    DocState state;
};

/// Worker side: extraction and the per-document output files.
Result process(const DocumentRecord& doc, extract::Backend& backend, const onto::Ontology& ontology,
               const extract::GuidanceRules& rules, const RunConfig& config) {
    Result r{doc.id, {}};
    extract::ExtractionConfig ec = config.extraction;
    ec.max_retries = config.max_retries;
    extract::ExtractionOutcome o;
    try {
        o = extract::run_extraction(doc, backend, ontology, rules, ec);
    } catch (const Error& e) {
        o.doc_id = doc.id;
        o.status = extract::Status::backend_failed;
        o.error = e.what();
    }
    r.state.status = from_extraction(o.status);
    r.state.attempts = o.attempts.size();
    r.state.cost = o.cost;
    r.state.error = o.error;

    const fs::path base = config.output_dir / doc.id;
    auto attempt_write = [&](const std::string& suffix, auto&& produce) {
        fs::path p = base;
        p += suffix;
        try {
            write_file(p, produce());
        } catch (const Error& e) {
            r.state.io_errors.push_back(e.what());
        }
    };
    auto remove_stale = [&](const std::string& suffix) {
        fs::path p = base;
        p += suffix;
        std::error_code err;
        fs::remove(p, err);
    };

    const bool keep = o.graph && (o.status == extract::Status::valid ||
                                  (o.status == extract::Status::invalid && config.keep_invalid));
    if (keep) attempt_write(".ttl", [&] { return turtle::serialize_turtle(*o.graph); });
    else remove_stale(".ttl");
    attempt_write(".report.json", [&] { return outcome_json(o); });
    if (o.comments) attempt_write(".comments.txt", [&] { return *o.comments + "\n"; });
    else remove_stale(".comments.txt");
    return r;
}

}  // namespace

RunState run_batch(const std::vector<DocumentRecord>& docs, extract::Backend& backend, const onto::Ontology& ontology,
                   const extract::GuidanceRules& rules, const RunConfig& config, ProgressCallback progress,
                   void* progress_user) {
    config.validate();
    std::set<std::string> ids;
    for (const auto& d : docs) {
        check_document_id(d.id);
        if (!ids.insert(d.id).second) throw DuplicateId(d.id);
    }

    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (!fs::is_directory(config.output_dir))
        throw IoError("cannot create output directory " + config.output_dir.string());

    const fs::path state_path = config.resolved_state_path();
    const std::string fingerprint = config_fingerprint(ontology.source_text(), rules.text(), backend.model_id());
    RunState state;
    if (fs::exists(state_path)) {
        state = load_run_state(state_path);
        if (state.fingerprint != fingerprint) throw StateFingerprintMismatch(state.fingerprint, fingerprint);
    } else {
        state.fingerprint = fingerprint;
        state.model = backend.model_id();
        state.started_at = now_utc();
    }
    for (const auto& d : docs) {
        auto [it, inserted] = state.docs.try_emplace(d.id);
        // A crash can leave "running" entries behind; they never finished.
        if (!inserted && it->second.status == DocStatus::running) it->second.status = DocStatus::pending;
    }

    std::vector<const DocumentRecord*> todo;
    for (const auto& d : docs)
        if (!is_terminal(state.docs.at(d.id).status)) todo.push_back(&d);
    if (config.limit && todo.size() > *config.limit) todo.resize(*config.limit);

    state.updated_at = now_utc();
    if (todo.empty()) {
        save_run_state(state_path, state);
        return state;
    }

    std::mutex mu;
    std::condition_variable job_cv;
    std::condition_variable result_cv;
    std::deque<Job> jobs;
    std::deque<Result> results;
    bool closing = false;

    auto worker = [&] {
        for (;;) {
            Job job{};
            {
                std::unique_lock lock(mu);
                job_cv.wait(lock, [&] { return closing || !jobs.empty(); });
                if (jobs.empty()) return;
                job = jobs.front();
                jobs.pop_front();
            }
            Result r = process(*job.doc, backend, ontology, rules, config);
            {
                std::lock_guard lock(mu);
                results.push_back(std::move(r));
            }
            result_cv.notify_one();
        }
    };

    const std::size_t n_workers = std::min(config.max_inflight, todo.size());
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);

    std::size_t next = 0;
    std::size_t inflight = 0;
    std::size_t done = 0;
    std::exception_ptr failure;
    // Coordinator: the only code that touches `state` or the state file.
    while (done < todo.size()) {
        {
            std::lock_guard lock(mu);
            while (next < todo.size() && inflight < config.max_inflight && !failure) {
                state.docs.at(todo[next]->id).status = DocStatus::running;
                jobs.push_back(Job{todo[next]});
                ++next;
                ++inflight;
            }
        }
        job_cv.notify_all();
        if (inflight == 0) break;
        Result r;
        {
            std::unique_lock lock(mu);
            result_cv.wait(lock, [&] { return !results.empty(); });
            r = std::move(results.front());
            results.pop_front();
        }
        --inflight;
        ++done;
        DocState& slot = state.docs.at(r.doc_id);
        slot = std::move(r.state);
        state.updated_at = now_utc();
        if (!failure) {
            try {
                save_run_state(state_path, state);
            } catch (...) {
                failure = std::current_exception();
            }
        }
        if (progress) progress(progress_user, r.doc_id, slot);
    }
    {
        std::lock_guard lock(mu);
        closing = true;
    }
    job_cv.notify_all();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return state;
}

std::vector<fs::path> list_turtle_files(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".ttl") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

rdf::Graph merge_outputs(const fs::path& dir) {
    const auto files = list_turtle_files(dir);
    const rdf::Iri from_doc = rdf::make_iri(rdf::ns::fca, "fromDocument");
    rdf::Graph merged;
    for (std::size_t i = 0; i < files.size(); ++i) {
        turtle::TurtleDocument doc;
        try {
            doc = turtle::parse_turtle(read_file(files[i]));
        } catch (const ParseError& e) {
            throw e.in_source(files[i].filename().string());
        }
        rdf::Graph g = rdf::relabel_blank_nodes(doc.graph, "f" + std::to_string(i) + "_");
        const rdf::Literal doc_id(files[i].stem().string());
        std::vector<rdf::Term> subjects;
        for (const auto& t : g) subjects.push_back(t.subject());
        merged.insert_all(g);
        for (const auto& s : subjects) merged.insert(rdf::Triple(s, from_doc, doc_id));
        for (const auto& [label, ns] : doc.prefixes.entries())
            if (!merged.prefixes().find(label)) merged.prefixes().set(label, ns);
    }
    return merged;
}

}  // namespace lexkg::corpus
