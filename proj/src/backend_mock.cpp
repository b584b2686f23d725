#include <fstream>
#include <sstream>

#include "lexkg/errors.hpp"
#include "lexkg/extraction.hpp"

namespace lexkg::extract {

namespace fs = std::filesystem;

MockBackend::MockBackend(fs::path fixture_dir, std::string model)
    : dir_(std::move(fixture_dir)), model_(std::move(model)) {
    if (!fs::is_directory(dir_)) throw IoError("mock fixture directory not found: " + dir_.string());
}

BackendReply MockBackend::send(const Prompt& prompt, const RequestContext& context) {
    ++calls_;
    fs::path file;
    for (std::size_t n = context.attempt; n >= 1; --n) {
        fs::path candidate = dir_ / (context.doc_id + ".attempt" + std::to_string(n) + ".txt");
        if (fs::is_regular_file(candidate)) {
            file = std::move(candidate);
            break;
        }
    }
    if (file.empty()) throw BackendError("no mock response for document '" + context.doc_id + "'");

    std::ifstream in(file, std::ios::binary);
    if (!in) throw BackendError("cannot read mock response " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();

    constexpr std::string_view directive = "!backend-error";
    if (std::string_view(text).substr(0, directive.size()) == directive) {
        auto nl = text.find('\n');
        std::string msg = nl == std::string::npos ? "" : text.substr(nl + 1);
        while (!msg.empty() && (msg.back() == '\n' || msg.back() == '\r')) msg.pop_back();
        throw BackendError(msg.empty() ? "mock backend error" : msg);
    }
    BackendReply reply;
    reply.input_tokens = prompt.token_estimate;
    reply.output_tokens = estimate_tokens(text);
    reply.text = std::move(text);
    return reply;
}

}  // namespace lexkg::extract
