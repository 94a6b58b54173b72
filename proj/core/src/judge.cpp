#include "viewcon/judge.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <unordered_map>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace viewcon {

namespace {

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::unordered_map<std::string, std::size_t> token_multiset(std::string_view text) {
    std::unordered_map<std::string, std::size_t> counts;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) ++counts[lowercase(text.substr(start, i - start))];
    }
    return counts;
}

std::string render_prompt(const std::string& tmpl, std::string_view candidate,
                          std::string_view reference) {
    std::string out = tmpl;
    auto replace_all = [&out](std::string_view key, std::string_view value) {
        for (std::size_t pos = out.find(key); pos != std::string::npos;
             pos = out.find(key, pos + value.size())) {
            out.replace(pos, key.size(), value);
        }
    };
    replace_all("{candidate}", candidate);
    replace_all("{reference}", reference);
    return out;
}

// First decimal number in the reply text, e.g. "Score: 0.85" -> 0.85.
std::optional<double> first_decimal(std::string_view text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') continue;
        std::size_t end = i;
        while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
        if (end < text.size() && text[end] == '.' && end + 1 < text.size() &&
            text[end + 1] >= '0' && text[end + 1] <= '9') {
            ++end;
            while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + end, v);
        if (ec == std::errc() && ptr == text.data() + end) return v;
        i = end;
    }
    return std::nullopt;
}

struct EndpointParts {
    std::string base;  // scheme://host[:port]
    std::string path;
};

EndpointParts split_endpoint(const std::string& endpoint) {
    const std::size_t scheme = endpoint.find("://");
    if (scheme == std::string::npos) {
        throw JudgeError("judge endpoint is not a URL: " + endpoint);
    }
    const std::size_t path_start = endpoint.find('/', scheme + 3);
    if (path_start == std::string::npos) {
        return {endpoint, "/v1/chat/completions"};
    }
    return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

std::string redact_key(std::string body, const std::string& key) {
    if (key.empty()) return body;
    for (std::size_t pos = body.find(key); pos != std::string::npos;
         pos = body.find(key, pos)) {
        body.replace(pos, key.size(), "[REDACTED]");
    }
    return body;
}

JudgeScore remote_judge_one(const ReasoningJudge& judge, std::string_view candidate,
                            std::string_view reference, long index) {
    const EndpointParts parts = split_endpoint(judge.endpoint);
    nlohmann::json request = {
        {"model", judge.model_name},
        {"messages",
         nlohmann::json::array(
             {{{"role", "user"},
               {"content", render_prompt(judge.prompt_template, candidate, reference)}}})},
        {"temperature", 0},
    };
    const std::string body = request.dump();

    std::string last_error;
    for (int attempt = 0; attempt <= judge.max_retries; ++attempt) {
        httplib::Client client(parts.base);
        const auto timeout_sec = static_cast<time_t>(judge.timeout_seconds);
        const auto timeout_usec =
            static_cast<time_t>((judge.timeout_seconds - static_cast<double>(timeout_sec)) * 1e6);
        client.set_connection_timeout(timeout_sec, timeout_usec);
        client.set_read_timeout(timeout_sec, timeout_usec);
        httplib::Headers headers;
        if (!judge.api_key.empty()) {
            headers.emplace("Authorization", "Bearer " + judge.api_key);
        }
        if (judge.debug_log) {
            judge.debug_log("judge request " + parts.base + parts.path + ": " +
                            redact_key(body, judge.api_key));
        }
        auto res = client.Post(parts.path, headers, body, "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (judge.debug_log) {
            judge.debug_log("judge response status " + std::to_string(res->status) + ": " +
                            redact_key(res->body, judge.api_key));
        }
        if (res->status != 200) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        std::string reply;
        try {
            const auto parsed = nlohmann::json::parse(res->body);
            reply = parsed.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw JudgeError(std::string("malformed judge reply: ") + e.what(), index,
                             res->body);
        }
        const auto value = first_decimal(reply);
        if (!value) {
            throw JudgeError("no decimal score in judge reply", index, reply);
        }
        JudgeScore score;
        score.raw_reply = reply;
        score.source = JudgeKind::Remote;
        if (*value <= 1.0) {
            score.value = *value;
        } else if (*value <= 100.0) {
            score.value = *value / 100.0;
            score.rescaled = true;
        } else {
            throw JudgeError("judge score out of range: " + std::to_string(*value), index,
                             reply);
        }
        return score;
    }
    throw JudgeError("judge request failed after " + std::to_string(judge.max_retries + 1) +
                         " attempts (" + last_error + ")",
                     index);
}

}  // namespace

ReasoningJudge remote_judge_from_env(std::string endpoint, std::string model,
                                     std::string api_key) {
    auto env_or = [](std::string value, const char* var) {
        if (!value.empty()) return value;
        const char* v = std::getenv(var);
        return v ? std::string(v) : std::string();
    };
    ReasoningJudge judge;
    judge.kind = JudgeKind::Remote;
    judge.endpoint = env_or(std::move(endpoint), "JUDGE_ENDPOINT");
    judge.model_name = env_or(std::move(model), "JUDGE_MODEL");
    judge.api_key = env_or(std::move(api_key), "JUDGE_API_KEY");
    if (judge.endpoint.empty() || judge.model_name.empty()) {
        throw JudgeError(
            "remote judge requires an endpoint and model name "
            "(flags or JUDGE_ENDPOINT/JUDGE_MODEL)");
    }
    return judge;
}

double lexical_unigram_f1(std::string_view a, std::string_view b) {
    const auto ca = token_multiset(a);
    const auto cb = token_multiset(b);
    std::size_t na = 0, nb = 0, overlap = 0;
    for (const auto& [tok, n] : ca) na += n;
    for (const auto& [tok, n] : cb) nb += n;
    if (na == 0 || nb == 0) return 0.0;
    for (const auto& [tok, n] : ca) {
        auto it = cb.find(tok);
        if (it != cb.end()) overlap += std::min(n, it->second);
    }
    if (overlap == 0) return 0.0;
    const double precision = static_cast<double>(overlap) / static_cast<double>(na);
    const double recall = static_cast<double>(overlap) / static_cast<double>(nb);
    return 2.0 * precision * recall / (precision + recall);
}

JudgeScore judge_similarity(const ReasoningJudge& judge, std::string_view candidate,
                            std::string_view reference) {
    if (reference.empty()) {
        throw ContractError("judge_similarity: reference reasoning must be non-empty");
    }
    if (judge.kind == JudgeKind::LexicalOracle) {
        return JudgeScore{lexical_unigram_f1(candidate, reference), std::nullopt,
                          JudgeKind::LexicalOracle, false};
    }
    return remote_judge_one(judge, candidate, reference, -1);
}

BatchJudgeOutcome try_batch_judge(const ReasoningJudge& judge,
                                  const std::vector<JudgePair>& pairs) {
    if (pairs.empty()) {
        throw ContractError("try_batch_judge: empty batch");
    }
    BatchJudgeOutcome out;
    out.scores.resize(pairs.size());

    if (judge.kind == JudgeKind::LexicalOracle) {
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            out.scores[i] = JudgeScore{lexical_unigram_f1(pairs[i].first, pairs[i].second),
                                       std::nullopt, JudgeKind::LexicalOracle, false};
        }
        return out;
    }

    const std::size_t workers =
        std::min<std::size_t>(std::max(judge.max_concurrency, 1), pairs.size());
    std::atomic<std::size_t> next{0};
    std::mutex failures_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&]() {
            for (std::size_t i = next.fetch_add(1); i < pairs.size(); i = next.fetch_add(1)) {
                try {
                    out.scores[i] = remote_judge_one(judge, pairs[i].first, pairs[i].second,
                                                     static_cast<long>(i));
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(failures_mutex);
                    out.failures.push_back({i, e.what()});
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    std::sort(out.failures.begin(), out.failures.end(),
              [](const JudgeFailure& a, const JudgeFailure& b) { return a.index < b.index; });
    return out;
}

std::vector<JudgeScore> batch_judge(const ReasoningJudge& judge,
                                    const std::vector<JudgePair>& pairs) {
    auto outcome = try_batch_judge(judge, pairs);
    if (!outcome.failures.empty()) {
        const auto& first = outcome.failures.front();
        throw JudgeError("batch judge: " + std::to_string(outcome.failures.size()) +
                             " pair(s) failed, first at index " + std::to_string(first.index) +
                             ": " + first.message,
                         static_cast<long>(first.index));
    }
    std::vector<JudgeScore> scores;
    scores.reserve(outcome.scores.size());
    for (auto& s : outcome.scores) scores.push_back(std::move(*s));
    return scores;
}

}  // namespace viewcon
