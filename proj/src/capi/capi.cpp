#include "agilegate.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "core/catalog.hpp"
#include "core/pipeline.hpp"
#include "core/report.hpp"

using namespace agilegate;

struct agilegate_catalog_t {
    Catalog catalog;
};

struct agilegate_report_t {
    DecisionReport report;
};

namespace {

char* dup_string(const std::string& text) {
    char* copy = static_cast<char*>(std::malloc(text.size() + 1));
    if (copy) {
        std::memcpy(copy, text.c_str(), text.size() + 1);
    }
    return copy;
}

void set_error(char** errmsg, const std::string& message) {
    if (errmsg) {
        *errmsg = dup_string(message);
    }
}

int code_of(const Error& e) {
    switch (e.code()) {
    case Errc::ParseError:
        return AGILEGATE_PARSE_ERROR;
    case Errc::InvalidCatalog:
        return AGILEGATE_INVALID_CATALOG;
    case Errc::UnknownPractice:
    case Errc::UnknownObjective:
    case Errc::UnknownCharacteristic:
    case Errc::UnknownProfileId:
    case Errc::UnknownFactor:
    case Errc::UnknownIndicator:
        return AGILEGATE_UNKNOWN_ID;
    case Errc::Internal:
        return AGILEGATE_INTERNAL_ERROR;
    default:
        return AGILEGATE_INVALID_INPUT;
    }
}

// Runs fn() inside the exception barrier; nothing may escape a C boundary.
template <typename Fn>
int guarded(char** errmsg, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        set_error(errmsg, e.what());
        return code_of(e);
    } catch (const std::bad_alloc&) {
        set_error(errmsg, "out of memory");
        return AGILEGATE_INTERNAL_ERROR;
    } catch (const std::exception& e) {
        set_error(errmsg, e.what());
        return AGILEGATE_INTERNAL_ERROR;
    }
}

// Mirrors what the CLI passes in: digests of the documents actually used.
std::vector<InputDigest> digests_for(
    std::initializer_list<std::pair<const char*, const char*>> docs) {
    std::vector<InputDigest> digests;
    for (const auto& [kind, text] : docs) {
        if (text) {
            digests.push_back(make_digest(kind, text));
        }
    }
    return digests;
}

} // namespace

extern "C" const char* agilegate_version(void) { return kToolVersion; }

extern "C" void agilegate_free(char* ptr) { std::free(ptr); }

extern "C" int agilegate_catalog_open(const char* data, size_t len,
                                      agilegate_catalog_t** out, char** errmsg) {
    if (!data || !out) {
        set_error(errmsg, "catalog_open: null argument");
        return AGILEGATE_BAD_ARGUMENT;
    }
    *out = nullptr;
    return guarded(errmsg, [&] {
        auto handle = std::make_unique<agilegate_catalog_t>();
        handle->catalog = load_catalog(std::string_view(data, len));
        *out = handle.release();
        return AGILEGATE_OK;
    });
}

extern "C" void agilegate_catalog_close(agilegate_catalog_t* catalog) { delete catalog; }

extern "C" int agilegate_catalog_to_json(const agilegate_catalog_t* catalog, char** out,
                                         char** errmsg) {
    if (!catalog || !out) {
        set_error(errmsg, "catalog_to_json: null argument");
        return AGILEGATE_BAD_ARGUMENT;
    }
    return guarded(errmsg, [&] {
        *out = dup_string(catalog_to_json(catalog->catalog));
        return *out ? AGILEGATE_OK : AGILEGATE_INTERNAL_ERROR;
    });
}

extern "C" int agilegate_explain(const agilegate_catalog_t* catalog, const char* practice_id,
                                 char** out, char** errmsg) {
    if (!catalog || !practice_id || !out) {
        set_error(errmsg, "explain: null argument");
        return AGILEGATE_BAD_ARGUMENT;
    }
    return guarded(errmsg, [&] {
        *out = dup_string(explain_practice(catalog->catalog, practice_id));
        return *out ? AGILEGATE_OK : AGILEGATE_INTERNAL_ERROR;
    });
}

extern "C" int agilegate_run(const agilegate_catalog_t* catalog, const char* profile_json,
                             const char* objectives_json, const char* responses_json,
                             const char* policies_json, agilegate_report_t** out,
                             char** errmsg) {
    return agilegate_what_if(catalog, profile_json, objectives_json, responses_json,
                             policies_json, nullptr, nullptr, 0, out, errmsg);
}

extern "C" int agilegate_what_if(const agilegate_catalog_t* catalog, const char* profile_json,
                                 const char* objectives_json, const char* responses_json,
                                 const char* policies_json, const char* const* override_ids,
                                 const double* override_degrees, size_t override_count,
                                 agilegate_report_t** out, char** errmsg) {
    if (!catalog || !profile_json || !objectives_json || !responses_json || !out ||
        (override_count > 0 && (!override_ids || !override_degrees))) {
        set_error(errmsg, "run: null argument");
        return AGILEGATE_BAD_ARGUMENT;
    }
    *out = nullptr;
    return guarded(errmsg, [&] {
        PipelineInputs inputs;
        inputs.catalog = &catalog->catalog;
        inputs.profile = parse_profile(profile_json);
        inputs.objectives = parse_objectives(objectives_json);
        inputs.responses = parse_responses(responses_json);
        if (policies_json) {
            inputs.policies = parse_policies(policies_json);
        }
        for (size_t i = 0; i < override_count; ++i) {
            if (!override_ids[i]) {
                throw Error(Errc::InvalidArgument, "what-if override id is null");
            }
            inputs.hypothetical[override_ids[i]] = override_degrees[i];
        }
        inputs.digests = digests_for({{"catalog", nullptr},
                                      {"profile", profile_json},
                                      {"objectives", objectives_json},
                                      {"responses", responses_json},
                                      {"policies", policies_json}});
        inputs.digests.insert(inputs.digests.begin(),
                              make_digest("catalog", catalog_to_json(catalog->catalog)));

        auto handle = std::make_unique<agilegate_report_t>();
        handle->report = run_pipeline(inputs);
        *out = handle.release();
        return AGILEGATE_OK;
    });
}

extern "C" int agilegate_run_stage1(const agilegate_catalog_t* catalog,
                                    const char* responses_json, const char* policies_json,
                                    agilegate_report_t** out, char** errmsg) {
    if (!catalog || !responses_json || !out) {
        set_error(errmsg, "stage1: null argument");
        return AGILEGATE_BAD_ARGUMENT;
    }
    *out = nullptr;
    return guarded(errmsg, [&] {
        PipelinePolicies policies;
        if (policies_json) {
            policies = parse_policies(policies_json);
        }
        auto digests = digests_for({{"responses", responses_json}, {"policies", policies_json}});
        digests.insert(digests.begin(),
                       make_digest("catalog", catalog_to_json(catalog->catalog)));

        auto handle = std::make_unique<agilegate_report_t>();
        handle->report = run_stage1(catalog->catalog, parse_responses(responses_json), policies,
                                    std::move(digests));
        *out = handle.release();
        return AGILEGATE_OK;
    });
}

extern "C" int agilegate_run_stage2(const agilegate_catalog_t* catalog, const char* profile_json,
                                    const char* stage1_report_json, int assume_go,
                                    agilegate_report_t** out, char** errmsg) {
    if (!catalog || !profile_json || !out || (!stage1_report_json && !assume_go)) {
        set_error(errmsg, "stage2: needs a profile plus a stage-1 report or assume_go");
        return AGILEGATE_BAD_ARGUMENT;
    }
    *out = nullptr;
    return guarded(errmsg, [&] {
        std::optional<DecisionReport> stage1;
        if (stage1_report_json) {
            stage1 = parse_report(stage1_report_json);
        }
        auto digests = digests_for({{"profile", profile_json}});
        digests.insert(digests.begin(),
                       make_digest("catalog", catalog_to_json(catalog->catalog)));
        if (stage1_report_json) {
            digests.push_back(make_digest("stage1-report", stage1_report_json));
        }

        auto handle = std::make_unique<agilegate_report_t>();
        handle->report = run_stage2(catalog->catalog, parse_profile(profile_json), stage1,
                                    assume_go != 0, std::move(digests));
        *out = handle.release();
        return AGILEGATE_OK;
    });
}

extern "C" int agilegate_run_stage3(const agilegate_catalog_t* catalog,
                                    const char* objectives_json, const char* responses_json,
                                    const char* policies_json, const char* stage2_report_json,
                                    agilegate_report_t** out, char** errmsg) {
    if (!catalog || !objectives_json || !responses_json || !stage2_report_json || !out) {
        set_error(errmsg, "stage3: null argument");
        return AGILEGATE_BAD_ARGUMENT;
    }
    *out = nullptr;
    return guarded(errmsg, [&] {
        PipelinePolicies policies;
        if (policies_json) {
            policies = parse_policies(policies_json);
        }
        auto digests = digests_for({{"objectives", objectives_json},
                                    {"responses", responses_json},
                                    {"policies", policies_json}});
        digests.insert(digests.begin(),
                       make_digest("catalog", catalog_to_json(catalog->catalog)));
        digests.push_back(make_digest("stage2-report", stage2_report_json));

        auto handle = std::make_unique<agilegate_report_t>();
        handle->report = run_stage3(catalog->catalog, parse_objectives(objectives_json),
                                    parse_responses(responses_json), policies,
                                    parse_report(stage2_report_json), std::move(digests));
        *out = handle.release();
        return AGILEGATE_OK;
    });
}

extern "C" int agilegate_report_parse(const char* data, size_t len, agilegate_report_t** out,
                                      char** errmsg) {
    if (!data || !out) {
        set_error(errmsg, "report_parse: null argument");
        return AGILEGATE_BAD_ARGUMENT;
    }
    *out = nullptr;
    return guarded(errmsg, [&] {
        auto handle = std::make_unique<agilegate_report_t>();
        handle->report = parse_report(std::string_view(data, len));
        *out = handle.release();
        return AGILEGATE_OK;
    });
}

extern "C" void agilegate_report_close(agilegate_report_t* report) { delete report; }

extern "C" int agilegate_report_render(const agilegate_report_t* report, int format, char** out,
                                       char** errmsg) {
    if (!report || !out ||
        (format != AGILEGATE_FORMAT_HUMAN && format != AGILEGATE_FORMAT_MACHINE)) {
        set_error(errmsg, "report_render: bad argument");
        return AGILEGATE_BAD_ARGUMENT;
    }
    return guarded(errmsg, [&] {
        *out = dup_string(render_report(report->report, format == AGILEGATE_FORMAT_MACHINE
                                                            ? ReportFormat::Machine
                                                            : ReportFormat::Human));
        return *out ? AGILEGATE_OK : AGILEGATE_INTERNAL_ERROR;
    });
}

extern "C" int agilegate_report_gate_verdict(const agilegate_report_t* report) {
    if (!report) {
        return -1;
    }
    if (report->report.gate_status == GateStatus::Assumed) {
        return AGILEGATE_VERDICT_ASSUMED;
    }
    return report->report.gate->verdict == Verdict::Go ? AGILEGATE_VERDICT_GO
                                                       : AGILEGATE_VERDICT_NOGO;
}
