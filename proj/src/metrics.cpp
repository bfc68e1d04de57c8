#include "raidsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "raidsim/errors.hpp"

namespace raidsim {

double nomdu_incident(double bytes, double duration, double usable, double mission) {
    if (duration > mission) throw AccountingError("unavailability longer than the mission");
    if (duration < 0.0 || bytes < 0.0) throw AccountingError("negative duration or size");
    if (!(usable > 0.0) || !(mission > 0.0)) throw ParameterError("usable capacity and mission must be positive");
    return bytes / usable * (duration / mission);
}

double nomdl_incident(double lost, double usable) {
    if (!(usable > 0.0)) throw ParameterError("usable capacity must be positive");
    if (lost < 0.0) throw AccountingError("negative lost bytes");
    if (lost > usable * (1.0 + 1e-12)) throw AccountingError("lost bytes exceed usable capacity");
    return lost / usable;
}

DosSplit apply_dos(const DlIncident& d, double dos, double recovery_time, double usable, double mission) {
    if (!(dos >= 0.0 && dos <= 1.0)) throw ParameterError("dos must lie in [0, 1]");
    DosSplit out;
    out.nomdl_part = (1.0 - dos) * nomdl_incident(d.lost_bytes, usable);
    if (dos > 0.0) out.nomdu_part = dos * nomdu_incident(d.lost_bytes, recovery_time, usable, mission);
    return out;
}

double merged_byte_hours(std::span<const DuIncident> incidents, double cap) {
    if (incidents.empty()) return 0.0;
    std::vector<std::pair<double, double>> edges;  // (time, +/- bytes)
    edges.reserve(incidents.size() * 2);
    for (const DuIncident& d : incidents) {
        if (!(d.end > d.start)) continue;
        edges.emplace_back(d.start, d.bytes);
        edges.emplace_back(d.end, -d.bytes);
    }
    std::sort(edges.begin(), edges.end());
    double active = 0.0, total = 0.0;
    for (std::size_t i = 0; i < edges.size();) {
        const double t = edges[i].first;
        while (i < edges.size() && edges[i].first == t) active += edges[i++].second;
        if (active < 0.0) active = 0.0;
        if (i < edges.size()) total += std::min(cap, active) * (edges[i].first - t);
    }
    return total;
}

double z_value(double confidence) {
    if (confidence == 0.90) return 1.645;
    if (confidence == 0.95) return 1.960;
    if (confidence == 0.99) return 2.576;
    throw ParameterError("confidence must be 0.90, 0.95 or 0.99");
}

double mc_error(std::span<const double> v, double confidence) {
    if (v.size() < 2) throw ParameterError("error bars need at least two values");
    const double z = z_value(confidence);
    const double n = static_cast<double>(v.size());
    // Shifted by the first value so that identical inputs give exactly zero.
    const double k = v.front();
    double sum = 0.0, sum_sq = 0.0;
    for (double x : v) {
        sum += x - k;
        sum_sq += (x - k) * (x - k);
    }
    const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
    return std::sqrt(var) * z / std::sqrt(n);
}

ArrayContribution contribution(const IncidentLog& log, double dos) {
    ArrayContribution c;
    const double u = log.usable_bytes;
    const double m = log.mission;
    const double w = log.weight;
    for (const DuIncident& d : log.du_incidents) {
        const double v = w * nomdu_incident(d.bytes, d.end - d.start, u, m);
        switch (d.cause) {
            case DuCause::ADU: c.nomdu_adu += v; break;
            case DuCause::SDU: c.nomdu_sdu += v; break;
            case DuCause::SurvivableRecovery: c.nomdu_recovery += v; break;
        }
    }
    c.nomdu = w * merged_byte_hours(log.du_incidents, u) / (u * m);
    for (const DlIncident& d : log.dl_incidents) {
        const double v = w * (1.0 - dos) * nomdl_incident(d.lost_bytes, u);
        (d.cause == DlCause::ADL ? c.nomdl_adl : c.nomdl_sdl) += v;
    }
    c.nomdl = c.nomdl_adl + c.nomdl_sdl;
    return c;
}

void FleetAggregator::add(const IncidentLog& log) {
    if (usable_ < 0.0) {
        usable_ = log.usable_bytes;
        mission_ = log.mission;
    } else if (log.usable_bytes != usable_ || log.mission != mission_) {
        throw ParameterError("fleet logs disagree on array capacity or mission");
    }
    parts_.push_back(contribution(log, dos_));
    counts_.adl += log.count(DlCause::ADL);
    counts_.sdl += log.count(DlCause::SDL);
    counts_.adu += log.episodes(DuCause::ADU);
    counts_.sdu += log.episodes(DuCause::SDU);
    if (log.code_r == 1) counts_.ddf += log.dl_incidents.size();
    if (log.code_r == 2) counts_.tdf += log.dl_incidents.size();
    counts_.disk_failures += log.counters.disk_failures;
    counts_.lse_arrivals += log.counters.lse_arrivals;
    counts_.replacements += log.counters.replacements;
    counts_.human_errors += log.counters.human_errors;
    counts_.crashes += log.counters.crashes;
    auto bucket = [&](double t) {
        const auto b = static_cast<std::size_t>(t / log.mission * kTimeBuckets);
        return std::min(b, kTimeBuckets - 1);
    };
    for (const DlIncident& d : log.dl_incidents) ++buckets_[bucket(d.time)][d.cause == DlCause::ADL ? 0 : 1];
    for (const DuIncident& d : log.du_incidents)
        if (d.opens_episode && d.cause != DuCause::SurvivableRecovery)
            ++buckets_[bucket(d.start)][d.cause == DuCause::ADU ? 2 : 3];
}

void FleetAggregator::merge(const FleetAggregator& o) {
    if (o.parts_.empty()) return;
    if (usable_ < 0.0) {
        usable_ = o.usable_;
        mission_ = o.mission_;
    } else if (o.usable_ != usable_ || o.mission_ != mission_) {
        throw ParameterError("fleet logs disagree on array capacity or mission");
    }
    parts_.insert(parts_.end(), o.parts_.begin(), o.parts_.end());
    const FleetCounts& c = o.counts_;
    counts_.adl += c.adl;
    counts_.sdl += c.sdl;
    counts_.adu += c.adu;
    counts_.sdu += c.sdu;
    counts_.ddf += c.ddf;
    counts_.tdf += c.tdf;
    counts_.disk_failures += c.disk_failures;
    counts_.lse_arrivals += c.lse_arrivals;
    counts_.replacements += c.replacements;
    counts_.human_errors += c.human_errors;
    counts_.crashes += c.crashes;
    for (std::size_t b = 0; b < kTimeBuckets; ++b)
        for (std::size_t j = 0; j < 4; ++j) buckets_[b][j] += o.buckets_[b][j];
}

namespace {

// Mean and error of one field; values are summed in sorted order so the result
// does not depend on the order arrays were added.
std::pair<double, double> summarize(const std::vector<ArrayContribution>& parts, double ArrayContribution::*field,
                                    double confidence) {
    std::vector<double> v;
    v.reserve(parts.size());
    for (const auto& p : parts) v.push_back(p.*field);
    std::sort(v.begin(), v.end());
    const double mean = v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    const double err = v.size() >= 2 ? mc_error(v, confidence) : 0.0;
    return {mean, err};
}

}  // namespace

FleetResult FleetAggregator::finish() const {
    FleetResult r;
    r.n_arrays = parts_.size();
    r.usable_bytes = usable_ > 0.0 ? usable_ * static_cast<double>(parts_.size()) : 0.0;
    r.mission = mission_ > 0.0 ? mission_ : 0.0;
    r.dos = dos_;
    r.confidence = confidence_;
    r.counts = counts_;
    r.timeseries = buckets_;
    std::tie(r.nomdu, r.nomdu_err) = summarize(parts_, &ArrayContribution::nomdu, confidence_);
    std::tie(r.nomdl, r.nomdl_err) = summarize(parts_, &ArrayContribution::nomdl, confidence_);
    r.nomdu_adu = summarize(parts_, &ArrayContribution::nomdu_adu, confidence_).first;
    r.nomdu_sdu = summarize(parts_, &ArrayContribution::nomdu_sdu, confidence_).first;
    r.nomdu_recovery = summarize(parts_, &ArrayContribution::nomdu_recovery, confidence_).first;
    std::tie(r.nomdl_adl, r.nomdl_adl_err) = summarize(parts_, &ArrayContribution::nomdl_adl, confidence_);
    std::tie(r.nomdl_sdl, r.nomdl_sdl_err) = summarize(parts_, &ArrayContribution::nomdl_sdl, confidence_);
    return r;
}

FleetResult aggregate(std::vector<IncidentLog> logs, double dos, double confidence) {
    z_value(confidence);
    FleetAggregator agg(dos, confidence);
    for (const auto& log : logs) agg.add(log);
    FleetResult r = agg.finish();
    r.per_array = std::move(logs);
    return r;
}

}  // namespace raidsim
