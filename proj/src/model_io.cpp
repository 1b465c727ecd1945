#include "ipalg/model_io.hpp"

#include <algorithm>
#include <sstream>

#include "ipalg/errors.hpp"
#include "ipalg/guards.hpp"
#include "ipalg/marginal.hpp"

namespace ipalg {

namespace {

void reject_unknown_keys(const Json& obj, const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw model_error(where + ": unknown key '" + it.key() + "'");
    }
}

Rat json_rational(const Json& value, const std::string& where) {
    if (value.is_number_integer())
        return Rat(static_cast<long long>(value.get<long long>()));
    if (value.is_string()) {
        try {
            return parse_rational(value.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw model_error(where + ": " + e.what());
        }
    }
    throw model_error(where + ": exact rational required (integer or \"p/q\" string)");
}

std::vector<std::string> json_name_list(const Json& value, const std::string& where) {
    if (!value.is_array()) throw model_error(where + ": expected an array of names");
    std::vector<std::string> names;
    for (const Json& item : value) {
        if (!item.is_string()) throw model_error(where + ": expected a name string");
        names.push_back(item.get<std::string>());
    }
    return names;
}

}  // namespace

std::string cell_key(const SpacePtr& sub, size_t index) {
    Scope full = sub->full_scope();
    Cell cell = cell_at(sub, full, index);
    std::string key;
    for (size_t k = 0; k < cell.size(); ++k) {
        if (k > 0) key += '|';
        key += sub->var(k).domain.at(cell[k]);
    }
    return key;
}

Gamble parse_gamble_object(const SpacePtr& sub, const Json& obj, const std::string& where) {
    if (!obj.is_object()) throw model_error(where + ": gamble must be a cell-to-rational object");
    size_t cells = static_cast<size_t>(sub->full_cell_count());
    std::map<std::string, size_t> key_to_index;
    for (size_t w = 0; w < cells; ++w) key_to_index[cell_key(sub, w)] = w;
    RatVec values(cells, Rat(0));
    std::vector<bool> seen(cells, false);
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        auto found = key_to_index.find(it.key());
        if (found == key_to_index.end())
            throw model_error(where + ": unknown cell '" + it.key() + "'");
        if (seen[found->second]) throw model_error(where + ": duplicate cell '" + it.key() + "'");
        seen[found->second] = true;
        values[found->second] = json_rational(it.value(), where + "." + it.key());
    }
    for (size_t w = 0; w < cells; ++w)
        if (!seen[w])
            throw model_error(where + ": missing cell '" + cell_key(sub, w) + "'");
    return make_gamble(sub, sub->full_scope(), std::move(values));
}

Json gamble_to_json(const Gamble& g) {
    Json out = Json::object();
    for (size_t w = 0; w < g.values.size(); ++w)
        out[cell_key(g.space, w)] = rat_to_string(g.values[w]);
    return out;
}

namespace {

LabeledPiece parse_piece(const SpacePtr& space, const std::string& name, const Json& body) {
    std::string where = "pieces." + name;
    if (!body.is_object()) throw model_error(where + ": expected an object");
    reject_unknown_keys(body, {"kind", "label", "generators", "assessments", "cells"}, where);
    if (!body.contains("kind") || !body["kind"].is_string())
        throw model_error(where + ": missing kind");
    std::string kind = body["kind"].get<std::string>();
    if (!body.contains("label")) throw model_error(where + ": missing label");
    std::vector<std::string> label_names = json_name_list(body["label"], where + ".label");
    Scope label;
    try {
        label = space->scope_of(label_names);
    } catch (const std::invalid_argument& e) {
        throw model_error(where + ".label: " + e.what());
    }
    SpacePtr sub = subspace(space, label);

    auto parse_generators = [&](const char* key) {
        std::vector<Gamble> gens;
        if (!body.contains(key)) return gens;
        if (!body[key].is_array()) throw model_error(where + ": generators must be an array");
        size_t i = 0;
        for (const Json& g : body[key])
            gens.push_back(parse_gamble_object(sub, g,
                                               where + ".generators[" + std::to_string(i++) + "]"));
        return gens;
    };

    if (kind == "cone") {
        if (body.contains("cells") || body.contains("assessments"))
            throw model_error(where + ": cone pieces take only generators");
        return LabeledPiece(space, label,
                            ConePiece::from_assessments(sub, parse_generators("generators")));
    }
    if (kind == "event") {
        // An event piece with generators is a mixed piece.
        if (body.contains("assessments"))
            throw model_error(where + ": event pieces take cells and optional generators");
        if (!body.contains("cells") || !body["cells"].is_array())
            throw model_error(where + ": missing cells array");
        size_t cells = static_cast<size_t>(sub->full_cell_count());
        std::map<std::string, size_t> key_to_index;
        for (size_t w = 0; w < cells; ++w) key_to_index[cell_key(sub, w)] = w;
        std::vector<bool> bits(cells, false);
        for (const Json& c : body["cells"]) {
            if (!c.is_string()) throw model_error(where + ".cells: expected cell strings");
            auto found = key_to_index.find(c.get<std::string>());
            if (found == key_to_index.end())
                throw model_error(where + ".cells: unknown cell '" + c.get<std::string>() + "'");
            bits[found->second] = true;
        }
        EventSet event(sub, std::move(bits));
        if (body.contains("generators"))
            return LabeledPiece(space, label, ConePiece::mixed(event, parse_generators("generators")));
        return LabeledPiece(space, label, embed(event));
    }
    if (kind == "prevision") {
        if (body.contains("cells"))
            throw model_error(where + ": prevision pieces take generators or assessments");
        if (body.contains("assessments")) {
            if (body.contains("generators"))
                throw model_error(where + ": give either generators or assessments, not both");
            if (!body["assessments"].is_array())
                throw model_error(where + ": assessments must be an array");
            std::vector<std::pair<Gamble, Rat>> bounds;
            size_t i = 0;
            for (const Json& a : body["assessments"]) {
                std::string aw = where + ".assessments[" + std::to_string(i++) + "]";
                if (!a.is_object()) throw model_error(aw + ": expected an object");
                reject_unknown_keys(a, {"gamble", "bound"}, aw);
                if (!a.contains("gamble") || !a.contains("bound"))
                    throw model_error(aw + ": needs gamble and bound");
                bounds.emplace_back(parse_gamble_object(sub, a["gamble"], aw + ".gamble"),
                                    json_rational(a["bound"], aw + ".bound"));
            }
            return LabeledPiece(space, label, natural_extension_from_bounds(sub, bounds));
        }
        std::vector<Gamble> gens = parse_generators("generators");
        if (incurs_sure_loss(sub, gens))
            return LabeledPiece(space, label, LowerPrevision::null_prevision(sub));
        return LabeledPiece(space, label, LowerPrevision::coherent(sub, std::move(gens)));
    }
    throw model_error(where + ": unknown kind '" + kind + "'");
}

}  // namespace

ModelDocument parse_model(const std::string& text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw model_error(std::string("syntax error: ") + e.what());
    }
    if (!root.is_object()) throw model_error("model: expected a JSON object");
    reject_unknown_keys(root, {"variables", "pieces", "queries"}, "model");
    if (!root.contains("variables") || !root["variables"].is_object())
        throw model_error("model: missing variables object");

    std::vector<Variable> vars;
    for (auto it = root["variables"].begin(); it != root["variables"].end(); ++it) {
        std::vector<std::string> domain =
            json_name_list(it.value(), "variables." + it.key());
        vars.push_back(Variable{it.key(), std::move(domain)});
    }
    ModelDocument doc;
    try {
        doc.space = Space::make(std::move(vars));
    } catch (const std::invalid_argument& e) {
        throw model_error(std::string("variables: ") + e.what());
    }

    if (root.contains("pieces")) {
        if (!root["pieces"].is_object()) throw model_error("pieces: expected an object");
        for (auto it = root["pieces"].begin(); it != root["pieces"].end(); ++it) {
            doc.piece_names.push_back(it.key());
            doc.pieces.emplace(it.key(), parse_piece(doc.space, it.key(), it.value()));
        }
    }
    if (root.contains("queries")) {
        if (!root["queries"].is_array()) throw model_error("queries: expected an array");
        doc.queries = root["queries"];
    }
    return doc;
}

namespace {

Json cone_summary(const LabeledPiece& piece) {
    Json out = Json::object();
    const ConePiece& c = piece.cone();
    switch (c.kind()) {
        case ConeKind::Vacuous:
            out["kind"] = "vacuous";
            break;
        case ConeKind::Contradiction:
            out["kind"] = "contradiction";
            break;
        case ConeKind::Generated:
            out["kind"] = "generated";
            break;
        case ConeKind::Event:
            out["kind"] = "event";
            break;
        case ConeKind::Mixed:
            out["kind"] = "mixed";
            break;
    }
    out["label"] = piece.base_space()->scope_names(piece.label());
    if (c.kind() == ConeKind::Event || c.kind() == ConeKind::Mixed) {
        Json cells = Json::array();
        EventSet a = c.event();
        for (size_t w = 0; w < a.members().size(); ++w)
            if (a.members()[w]) cells.push_back(cell_key(piece.local_space(), w));
        out["cells"] = std::move(cells);
    }
    if (c.kind() == ConeKind::Generated || c.kind() == ConeKind::Mixed) {
        Json gens = Json::array();
        for (const Gamble& g : c.generators()) gens.push_back(gamble_to_json(g));
        out["generators"] = std::move(gens);
    }
    return out;
}

Json prevision_summary(const LabeledPiece& piece) {
    Json out = Json::object();
    out["kind"] = "prevision";
    out["label"] = piece.base_space()->scope_names(piece.label());
    const LowerPrevision& p = piece.prevision_content();
    out["coherent"] = !p.is_null();
    if (!p.is_null()) {
        Json gens = Json::array();
        for (const Gamble& g : p.assessment()) gens.push_back(gamble_to_json(g));
        out["assessment"] = std::move(gens);
    }
    return out;
}

}  // namespace

Json piece_summary(const LabeledPiece& piece) {
    return piece.content_kind() == ContentKind::Cone ? cone_summary(piece)
                                                     : prevision_summary(piece);
}

std::string serialize_model(const ModelDocument& doc) {
    Json root = Json::object();
    Json vars = Json::object();
    for (const Variable& v : doc.space->variables()) vars[v.name] = v.domain;
    root["variables"] = std::move(vars);
    Json pieces = Json::object();
    for (const std::string& name : doc.piece_names) {
        const LabeledPiece& piece = doc.pieces.at(name);
        Json body = piece_summary(piece);
        // Rewrite summaries as parseable declarations. The lattice
        // constants become generator lists that canonicalize back: the
        // empty list for the vacuous piece, a uniformly negative gamble
        // for the contradiction, a sure-loss assessment for null.
        Json label_names = doc.space->scope_names(piece.label());
        auto negative_one = [&]() {
            Json g = Json::object();
            SpacePtr sub = piece.local_space();
            for (size_t w = 0; w < sub->full_cell_count(); ++w) g[cell_key(sub, w)] = "-1";
            return g;
        };
        if (body["kind"] == "vacuous" || body["kind"] == "contradiction") {
            bool contradiction = body["kind"] == "contradiction";
            body = Json::object();
            body["kind"] = "cone";
            body["label"] = label_names;
            body["generators"] = Json::array();
            if (contradiction) body["generators"].push_back(negative_one());
        } else if (body["kind"] == "generated") {
            body["kind"] = "cone";
        } else if (body["kind"] == "mixed") {
            body["kind"] = "event";
        } else if (body["kind"] == "prevision") {
            Json rebuilt = Json::object();
            rebuilt["kind"] = "prevision";
            rebuilt["label"] = body["label"];
            rebuilt["generators"] =
                body.contains("assessment") ? body["assessment"] : Json::array();
            if (body["coherent"] == false) rebuilt["generators"].push_back(negative_one());
            body = std::move(rebuilt);
        }
        pieces[name] = std::move(body);
    }
    root["pieces"] = std::move(pieces);
    root["queries"] = doc.queries;
    return root.dump(2) + "\n";
}

namespace {

const LabeledPiece& find_piece(const ModelDocument& doc,
                               const std::map<std::string, LabeledPiece>& derived,
                               const std::string& name, const std::string& where) {
    auto d = derived.find(name);
    if (d != derived.end()) return d->second;
    auto it = doc.pieces.find(name);
    if (it == doc.pieces.end()) throw model_error(where + ": unknown piece '" + name + "'");
    return it->second;
}

std::string required_string(const Json& query, const char* key, const std::string& where) {
    if (!query.contains(key) || !query[key].is_string())
        throw model_error(where + ": missing '" + key + "'");
    return query[key].get<std::string>();
}

void store_derived(const ModelDocument& doc, std::map<std::string, LabeledPiece>& derived,
                   const Json& query, const std::string& where, LabeledPiece piece,
                   Json& report) {
    if (!query.contains("as")) return;
    std::string name = query["as"].get<std::string>();
    if (doc.pieces.count(name) || derived.count(name))
        throw model_error(where + ": name '" + name + "' is already taken");
    derived.emplace(name, std::move(piece));
    report["as"] = name;
}

std::string prevision_value_string(const std::optional<Rat>& v) {
    return v.has_value() ? rat_to_string(*v) : std::string("inf");
}

}  // namespace

Json run_query(const ModelDocument& doc, std::map<std::string, LabeledPiece>& derived,
               const Json& query) {
    if (!query.is_object()) throw model_error("query: expected an object");
    std::string command = required_string(query, "command", "query");
    std::string where = "query '" + command + "'";
    reset_kernel_stats();

    Json report = Json::object();
    report["command"] = command;

    auto gamble_for = [&](const LabeledPiece& piece) {
        if (!query.contains("gamble")) throw model_error(where + ": missing 'gamble'");
        return parse_gamble_object(piece.local_space(), query["gamble"], where + ".gamble");
    };
    auto piece_arg = [&](const char* key) -> const LabeledPiece& {
        return find_piece(doc, derived, required_string(query, key, where), where);
    };
    auto piece_list = [&]() {
        if (!query.contains("pieces") || !query["pieces"].is_array())
            throw model_error(where + ": missing 'pieces' array");
        std::vector<std::string> names;
        for (const Json& n : query["pieces"]) names.push_back(n.get<std::string>());
        KnowledgeBase kb;
        for (const std::string& n : names) kb.pieces.push_back(find_piece(doc, derived, n, where));
        report["pieces"] = names;
        return kb;
    };

    if (command == "check-coherence") {
        const LabeledPiece& piece = piece_arg("piece");
        report["piece"] = query["piece"];
        if (piece.content_kind() == ContentKind::Cone) {
            report["result"] = piece.cone().coherent()
                                   ? "coherent"
                                   : "incoherent (0 in natural extension)";
        } else {
            report["result"] = piece.prevision_content().is_null()
                                   ? "incoherent (sure loss)"
                                   : "coherent";
        }
    } else if (command == "prevision" || command == "upper") {
        const LabeledPiece& piece = piece_arg("piece");
        report["piece"] = query["piece"];
        if (piece.content_kind() != ContentKind::Prevision)
            throw model_error(where + ": piece is not a prevision; apply sigma first");
        Gamble f = gamble_for(piece);
        report["gamble"] = query["gamble"];
        if (command == "prevision") {
            report["result"] = prevision_value_string(prevision(piece.prevision_content(), f));
        } else {
            std::optional<Rat> v = upper_prevision(piece.prevision_content(), f);
            report["result"] = v.has_value() ? rat_to_string(*v) : std::string("null");
        }
    } else if (command == "contains") {
        const LabeledPiece& piece = piece_arg("piece");
        report["piece"] = query["piece"];
        if (piece.content_kind() != ContentKind::Cone)
            throw model_error(where + ": piece is not a cone");
        Gamble f = gamble_for(piece);
        report["gamble"] = query["gamble"];
        report["result"] = contains(piece.cone(), f);
    } else if (command == "sigma") {
        const LabeledPiece& piece = piece_arg("piece");
        report["piece"] = query["piece"];
        if (piece.content_kind() != ContentKind::Cone)
            throw model_error(where + ": sigma expects a cone piece");
        LabeledPiece converted(piece.base_space(), piece.label(), sigma(piece.cone()));
        report["result"] = piece_summary(converted);
        store_derived(doc, derived, query, where, std::move(converted), report);
    } else if (command == "combine") {
        const LabeledPiece& a = piece_arg("piece1");
        const LabeledPiece& b = piece_arg("piece2");
        report["piece1"] = query["piece1"];
        report["piece2"] = query["piece2"];
        LabeledPiece combined = combine_labeled(a, b);
        report["result"] = piece_summary(combined);
        store_derived(doc, derived, query, where, std::move(combined), report);
    } else if (command == "marginalize") {
        const LabeledPiece& piece = piece_arg("piece");
        report["piece"] = query["piece"];
        if (!query.contains("scope"))
            throw model_error(where + ": missing 'scope'");
        std::vector<std::string> names = json_name_list(query["scope"], where + ".scope");
        Scope target;
        try {
            target = piece.base_space()->scope_of(names);
        } catch (const std::invalid_argument& e) {
            throw model_error(where + ".scope: " + e.what());
        }
        report["scope"] = names;
        LabeledPiece marginal = project_labeled(piece, target);
        report["result"] = piece_summary(marginal);
        store_derived(doc, derived, query, where, std::move(marginal), report);
    } else if (command == "credal-vertices") {
        const LabeledPiece& piece = piece_arg("piece");
        report["piece"] = query["piece"];
        if (piece.content_kind() != ContentKind::Prevision)
            throw model_error(where + ": piece is not a prevision; apply sigma first");
        if (piece.prevision_content().is_null())
            throw model_error(where + ": the null prevision has no credal set");
        CredalSet vertices = credal_vertices(piece.prevision_content());
        Json list = Json::array();
        for (const MassFunction& m : vertices) {
            Json row = Json::object();
            for (size_t w = 0; w < m.probs.size(); ++w)
                row[cell_key(m.space, w)] = rat_to_string(m.probs[w]);
            list.push_back(std::move(row));
        }
        report["result"] = std::move(list);
    } else if (command == "compatible") {
        KnowledgeBase kb = piece_list();
        CompatibilityVerdict verdict = check_compatibility(kb);
        switch (verdict.kind) {
            case CompatibilityVerdict::Kind::Compatible:
                report["result"] = "compatible";
                break;
            case CompatibilityVerdict::Kind::Inconsistent:
                report["result"] = "inconsistent";
                break;
            case CompatibilityVerdict::Kind::Incompatible: {
                report["result"] = "incompatible";
                Json failing = Json::array();
                for (size_t i : verdict.failing) failing.push_back(report["pieces"][i]);
                report["failing"] = std::move(failing);
                break;
            }
        }
    } else if (command == "solve-marginal") {
        KnowledgeBase kb = piece_list();
        std::vector<Scope> scopes;
        for (const LabeledPiece& piece : kb.pieces) scopes.push_back(piece.label());
        RipResult rip = satisfies_rip(scopes);
        if (std::holds_alternative<RipFailure>(rip)) {
            report["rip"] = "no";
            report["first_violation"] = std::get<RipFailure>(rip).first_violating + 1;
        } else {
            report["rip"] = "yes";
            const RipCertificate& cert = std::get<RipCertificate>(rip);
            Json parents = Json::array();
            for (size_t p : cert.parent) parents.push_back(p + 1);
            report["certificate"] = std::move(parents);
            std::vector<LabeledPiece> marginals = join_tree_marginals(kb, cert);
            bool consistent = !marginals.back().is_null();
            report["consistent"] = consistent;
            Json list = Json::array();
            bool all_match = consistent;
            for (size_t i = 0; i < marginals.size(); ++i) {
                list.push_back(piece_summary(marginals[i]));
                if (consistent && !labeled_equal(marginals[i], kb.pieces[i])) all_match = false;
            }
            report["marginals"] = std::move(list);
            report["compatible"] = all_match;
        }
    } else if (command == "rip") {
        if (!query.contains("scopes") || !query["scopes"].is_array())
            throw model_error(where + ": missing 'scopes' array of name arrays");
        std::vector<Scope> scopes;
        for (const Json& s : query["scopes"])
            scopes.push_back(doc.space->scope_of(json_name_list(s, where + ".scopes")));
        report["scopes"] = query["scopes"];
        RipResult rip = satisfies_rip(scopes);
        if (std::holds_alternative<RipCertificate>(rip)) {
            report["result"] = "RIP: yes";
            Json parents = Json::array();
            for (size_t p : std::get<RipCertificate>(rip).parent) parents.push_back(p + 1);
            report["certificate"] = std::move(parents);
        } else {
            report["result"] = "RIP: no";
            report["first_violation"] = std::get<RipFailure>(rip).first_violating + 1;
        }
    } else {
        throw model_error(where + ": unknown command");
    }

    Json stats = Json::object();
    stats["lp_pivots"] = kernel_stats().lp_pivots;
    stats["rays_enumerated"] = kernel_stats().rays_enumerated;
    report["stats"] = std::move(stats);
    return report;
}

Json run_document(const ModelDocument& doc) {
    Json report = Json::object();
    Json results = Json::array();
    std::map<std::string, LabeledPiece> derived;
    for (const Json& query : doc.queries) results.push_back(run_query(doc, derived, query));
    report["queries"] = std::move(results);
    return report;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace ipalg
