#pragma once

#include "shiftprop/certificates.hpp"
#include "shiftprop/io.hpp"
#include "shiftprop/monoid.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace shiftprop {

inline constexpr int kSchemaVersion = 1;

/// Loads a monoid file: {"elements": [...], "table": [[...]], "unit": i,
/// "hom": [...]} with "elements" and "hom" optional. Validation happens in
/// the monoid constructors.
inline std::pair<FiniteMonoid, std::optional<MonoidHom>> load_monoid(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<std::vector<std::size_t>> table = j.at("table").get<std::vector<std::vector<std::size_t>>>();
    std::size_t unit = j.at("unit").get<std::size_t>();
    std::vector<std::string> labels;
    if (j.contains("elements")) labels = j.at("elements").get<std::vector<std::string>>();
    FiniteMonoid monoid(std::move(table), unit, std::move(labels));
    std::optional<MonoidHom> hom;
    if (j.contains("hom")) hom = MonoidHom(monoid, j.at("hom").get<std::vector<std::size_t>>());
    return {std::move(monoid), std::move(hom)};
}

namespace detail {

template <Semiring R>
nlohmann::json step_to_json(const CertStep<R>& st) {
    using Kind = typename CertStep<R>::Kind;
    nlohmann::json j;
    switch (st.kind) {
        case Kind::Factor:
            j["type"] = "factor";
            j["R"] = render_matrix(*st.factor_r);
            j["S"] = render_matrix(*st.factor_s);
            break;
        case Kind::ExpandRow:
            j["type"] = "expand-row";
            j["row"] = st.row;
            break;
        case Kind::ContractRow: j["type"] = "contract-row"; break;
        case Kind::Permute:
            j["type"] = "permute";
            j["images"] = st.perm.images();
            break;
        case Kind::RowAdd:
        case Kind::ColAdd: {
            j["type"] = st.kind == Kind::RowAdd ? "row-add" : "col-add";
            j["i"] = st.add_i;
            j["j"] = st.add_j;
            j["mult"] = render_entry(R(), st.mult);
            j["backward"] = st.backward;
            break;
        }
        case Kind::Stabilize:
            j["type"] = "stabilize";
            j["backward"] = st.backward;
            break;
    }
    return j;
}

template <Semiring R>
CertStep<R> step_from_json(const nlohmann::json& j, R ring) {
    std::string type = j.at("type").get<std::string>();
    if (type == "factor")
        return CertStep<R>::factor(parse_matrix<R>(j.at("R").get<std::string>(), ring),
                                   parse_matrix<R>(j.at("S").get<std::string>(), ring));
    if (type == "expand-row") return CertStep<R>::expand_row(j.at("row").get<std::size_t>());
    if (type == "contract-row") return CertStep<R>::contract_row();
    if (type == "permute")
        return CertStep<R>::permute(Permutation(j.at("images").get<std::vector<std::size_t>>()));
    if (type == "row-add" || type == "col-add") {
        auto mult = parse_entry(ring, j.at("mult").get<std::string>(), 1, 1);
        bool backward = j.value("backward", false);
        return type == "row-add"
                   ? CertStep<R>::row_add(j.at("i").get<std::size_t>(), j.at("j").get<std::size_t>(), mult, backward)
                   : CertStep<R>::col_add(j.at("i").get<std::size_t>(), j.at("j").get<std::size_t>(), mult, backward);
    }
    if (type == "stabilize") return CertStep<R>::stabilize(j.value("backward", false));
    throw std::invalid_argument("unknown certificate step type: " + type);
}

}  // namespace detail

template <Semiring R>
nlohmann::json certificate_to_json(const MoveCertificate<R>& cert) {
    nlohmann::json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = "move-certificate";
    j["relation"] = cert.relation;
    j["ring"] = R().name();
    j["source"] = render_matrix(cert.source);
    j["target"] = render_matrix(cert.target);
    j["steps"] = nlohmann::json::array();
    for (const auto& st : cert.steps) j["steps"].push_back(detail::step_to_json(st));
    return j;
}

using AnyCertificate = std::variant<MoveCertificate<ZPlusRing>, MoveCertificate<ZPlusPolyRing>>;

inline AnyCertificate certificate_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.value("schema", 0) != kSchemaVersion) throw std::invalid_argument("unsupported certificate schema");
    std::string ring = j.at("ring").get<std::string>();
    std::string relation = j.at("relation").get<std::string>();
    auto build = [&](auto ring_tag) -> AnyCertificate {
        using R = decltype(ring_tag);
        MoveCertificate<R> cert(relation, parse_matrix<R>(j.at("source").get<std::string>(), ring_tag),
                                parse_matrix<R>(j.at("target").get<std::string>(), ring_tag));
        for (const auto& js : j.at("steps")) cert.steps.push_back(detail::step_from_json<R>(js, ring_tag));
        return cert;
    };
    if (ring == "zplus") return build(ZPlusRing{});
    if (ring == "zplus_t") return build(ZPlusPolyRing{});
    throw std::invalid_argument("unsupported certificate ring: " + ring);
}

}  // namespace shiftprop
