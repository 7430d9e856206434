#include "shotasm/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "shotasm/energy.hpp"
#include "shotasm/error.hpp"

namespace shotasm {
namespace {

using nlohmann::json;

ShotSize size_or_throw(const std::string& s) {
    if (auto v = parse_shot_size(s)) return *v;
    throw Error(ErrorCode::UnknownLabel, s);
}

MotionType motion_or_throw(const std::string& s) {
    if (auto v = parse_motion(s)) return *v;
    throw Error(ErrorCode::UnknownLabel, s);
}

std::vector<double> numeric_array(const json& node, const char* what) {
    if (!node.is_array()) throw Error(ErrorCode::MalformedJson, std::string(what) + " must be an array");
    std::vector<double> out;
    out.reserve(node.size());
    for (const auto& v : node) {
        if (!v.is_number()) throw Error(ErrorCode::MalformedJson, std::string(what) + " entries must be numbers");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw Error(ErrorCode::NonFiniteInput, what);
        out.push_back(d);
    }
    return out;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

// "MS", "STABLE", "MS,STABLE", ",UP" or "CU,".
LabelEntry parse_label_token(std::string_view token) {
    LabelEntry entry;
    const auto comma = token.find(',');
    if (comma != std::string_view::npos) {
        const auto size = trim(token.substr(0, comma));
        const auto motion = trim(token.substr(comma + 1));
        if (!size.empty()) entry.shot_size = size_or_throw(size);
        if (!motion.empty()) entry.motion = motion_or_throw(motion);
    } else {
        const auto label = trim(token);
        if (auto s = parse_shot_size(label)) {
            entry.shot_size = s;
        } else if (auto m = parse_motion(label)) {
            entry.motion = m;
        } else {
            throw Error(ErrorCode::UnknownLabel, label);
        }
    }
    if (!entry.shot_size && !entry.motion) throw Error(ErrorCode::UnknownLabel, std::string(token));
    return entry;
}

LabelSequence parse_reference_json(const json& doc) {
    if (!doc.is_array()) throw Error(ErrorCode::MalformedJson, "reference JSON must be an array");
    LabelSequence out;
    for (const auto& item : doc) {
        if (item.is_string()) {
            out.push_back(parse_label_token(item.get<std::string>()));
        } else if (item.is_object()) {
            LabelEntry entry;
            if (auto it = item.find("shot_size"); it != item.end() && !it->is_null())
                entry.shot_size = size_or_throw(it->get<std::string>());
            if (auto it = item.find("motion"); it != item.end() && !it->is_null())
                entry.motion = motion_or_throw(it->get<std::string>());
            if (!entry.shot_size && !entry.motion) throw Error(ErrorCode::UnknownLabel, item.dump());
            out.push_back(entry);
        } else {
            throw Error(ErrorCode::MalformedJson, "reference entries must be strings or objects");
        }
    }
    return out;
}

}  // namespace

void normalize_l2(std::vector<double>& v) {
    double norm2 = 0.0;
    for (double x : v) norm2 += x * x;
    const double norm = std::sqrt(norm2);
    if (!(norm >= 1e-12)) throw Error(ErrorCode::ZeroVector, "cannot normalize a zero vector");
    for (double& x : v) x /= norm;
}

ShotCatalog ShotCatalog::create(std::vector<Shot> shots, std::optional<std::vector<double>> script_embedding,
                                std::optional<std::string> script_text) {
    if (shots.empty()) throw Error(ErrorCode::InvalidConfig, "catalog needs at least one shot");
    ShotCatalog c;
    auto check_dim = [&c](std::size_t dim) {
        if (dim == 0) throw Error(ErrorCode::EmbeddingDimMismatch, "empty embedding");
        if (c.embedding_dim_ && *c.embedding_dim_ != dim) {
            throw Error(ErrorCode::EmbeddingDimMismatch,
                        std::to_string(dim) + " vs " + std::to_string(*c.embedding_dim_));
        }
        c.embedding_dim_ = dim;
    };
    for (std::size_t i = 0; i < shots.size(); ++i) {
        auto& s = shots[i];
        if (s.id.empty()) throw Error(ErrorCode::MalformedJson, "shot id must be non-empty");
        if (!c.by_id_.emplace(s.id, i).second) throw Error(ErrorCode::DuplicateShotId, s.id);
        if (s.duration_s && !(*s.duration_s >= 0.0)) throw Error(ErrorCode::NegativeDuration, s.id);
        if (s.embedding) {
            check_dim(s.embedding->size());
            normalize_l2(*s.embedding);
        }
    }
    if (script_embedding) {
        check_dim(script_embedding->size());
        normalize_l2(*script_embedding);
    }
    c.shots_ = std::move(shots);
    c.script_embedding_ = std::move(script_embedding);
    c.script_text_ = std::move(script_text);
    return c;
}

std::optional<std::size_t> ShotCatalog::find(std::string_view id) const {
    if (auto it = by_id_.find(std::string(id)); it != by_id_.end()) return it->second;
    return std::nullopt;
}

std::size_t ShotCatalog::index_of(std::string_view id) const {
    if (auto i = find(id)) return *i;
    throw Error(ErrorCode::UnknownShotId, std::string(id));
}

bool ShotCatalog::all_shots_embedded() const noexcept {
    return std::all_of(shots_.begin(), shots_.end(), [](const Shot& s) { return s.embedding.has_value(); });
}

ShotCatalog parse_catalog(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedJson, e.what());
    }
    try {
        if (!doc.is_object() || !doc.contains("shots") || !doc["shots"].is_array()) {
            throw Error(ErrorCode::MalformedJson, "expected an object with a \"shots\" array");
        }
        std::vector<Shot> shots;
        for (const auto& node : doc["shots"]) {
            if (!node.is_object()) throw Error(ErrorCode::MalformedJson, "shot entries must be objects");
            Shot s;
            if (!node.contains("id") || !node["id"].is_string()) {
                throw Error(ErrorCode::MalformedJson, "shot without string \"id\"");
            }
            s.id = node["id"].get<std::string>();
            if (auto it = node.find("shot_size"); it != node.end() && !it->is_null())
                s.shot_size = size_or_throw(it->get<std::string>());
            if (auto it = node.find("motion"); it != node.end() && !it->is_null())
                s.motion = motion_or_throw(it->get<std::string>());
            if (auto it = node.find("description"); it != node.end() && !it->is_null())
                s.description = it->get<std::string>();
            if (auto it = node.find("embedding"); it != node.end() && !it->is_null())
                s.embedding = numeric_array(*it, "embedding");
            if (auto it = node.find("duration_s"); it != node.end() && !it->is_null()) {
                if (!it->is_number()) throw Error(ErrorCode::MalformedJson, "duration_s must be a number");
                s.duration_s = it->get<double>();
            }
            shots.push_back(std::move(s));
        }
        if (shots.empty()) throw Error(ErrorCode::MalformedJson, "catalog has no shots");
        std::optional<std::vector<double>> script_embedding;
        std::optional<std::string> script_text;
        if (auto it = doc.find("script"); it != doc.end() && !it->is_null()) {
            if (!it->is_object()) throw Error(ErrorCode::MalformedJson, "\"script\" must be an object");
            if (auto t = it->find("text"); t != it->end() && !t->is_null()) script_text = t->get<std::string>();
            if (auto e = it->find("embedding"); e != it->end() && !e->is_null())
                script_embedding = numeric_array(*e, "script embedding");
        }
        return ShotCatalog::create(std::move(shots), std::move(script_embedding), std::move(script_text));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedJson, e.what());
    }
}

std::string serialize_catalog(const ShotCatalog& catalog) {
    nlohmann::ordered_json doc;
    auto shots = nlohmann::ordered_json::array();
    for (const auto& s : catalog.shots()) {
        nlohmann::ordered_json node;
        node["id"] = s.id;
        if (s.shot_size) node["shot_size"] = std::string(to_string(*s.shot_size));
        if (s.motion) node["motion"] = std::string(to_string(*s.motion));
        if (s.description) node["description"] = *s.description;
        if (s.embedding) node["embedding"] = *s.embedding;
        if (s.duration_s) node["duration_s"] = *s.duration_s;
        shots.push_back(std::move(node));
    }
    doc["shots"] = std::move(shots);
    if (catalog.script_embedding() || catalog.script_text()) {
        nlohmann::ordered_json script = nlohmann::ordered_json::object();
        if (catalog.script_text()) script["text"] = *catalog.script_text();
        if (catalog.script_embedding()) script["embedding"] = *catalog.script_embedding();
        doc["script"] = std::move(script);
    }
    return doc.dump(2) + "\n";
}

LabelSequence parse_reference(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) throw Error(ErrorCode::EmptySequence, "reference is empty");
    LabelSequence out;
    if (text[first] == '[' || text[first] == '{') {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::exception& e) {
            throw Error(ErrorCode::MalformedJson, e.what());
        }
        try {
            out = parse_reference_json(doc);
        } catch (const json::exception& e) {
            throw Error(ErrorCode::MalformedJson, e.what());
        }
    } else {
        std::istringstream in{std::string(text)};
        std::string line;
        while (std::getline(in, line)) {
            const auto t = trim(line);
            if (t.empty() || t.front() == '#') continue;
            out.push_back(parse_label_token(t));
        }
    }
    if (out.empty()) throw Error(ErrorCode::EmptySequence, "reference has no entries");
    return out;
}

std::string serialize_reference(const LabelSequence& labels) {
    std::string out;
    for (const auto& e : labels) {
        if (e.shot_size) out += to_string(*e.shot_size);
        out += ',';
        if (e.motion) out += to_string(*e.motion);
        out += '\n';
    }
    return out;
}

LabelSequence labels_of(const ShotCatalog& catalog, const std::vector<std::size_t>& indices) {
    LabelSequence out;
    out.reserve(indices.size());
    for (auto i : indices) out.push_back({catalog[i].shot_size, catalog[i].motion});
    return out;
}

void validate_instance(const ShotCatalog& catalog, std::size_t k, const EnergySpec& spec) {
    if (k == 0) throw Error(ErrorCode::InvalidConfig, "k must be positive");
    if (k > catalog.size()) {
        throw Error(ErrorCode::KExceedsN, "k=" + std::to_string(k) + " > N=" + std::to_string(catalog.size()));
    }
    spec.validate();
    if (spec.gamma > 0.0) {
        if (!spec.script_embedding) throw Error(ErrorCode::MissingEmbeddings, "gamma > 0 needs a script embedding");
        if (!catalog.all_shots_embedded()) {
            throw Error(ErrorCode::MissingEmbeddings, "gamma > 0 needs an embedding on every shot");
        }
        if (catalog.embedding_dim() && *catalog.embedding_dim() != spec.script_embedding->size()) {
            throw Error(ErrorCode::EmbeddingDimMismatch, "script vs shot embeddings");
        }
    }
}

}  // namespace shotasm
