use std::collections::HashMap;

use rayon::prelude::*;

use newswire::corpus::ClusterRecord;
use newswire::georef::{georef_cluster, ApCityTable, DatelineRecord, GeorefContext, LocationNotePatterns};
use newswire::ingest::{load_bylines, load_gazetteer, load_regions};
use newswire::wirefilter::{Verdict, WireDecision};

use super::dedup::index_articles;
use super::{files, Ctx};
use crate::config::{optional, required};
use crate::error::{CliError, CliResult};
use crate::manifest::{read_jsonl, write_jsonl, ManifestBuilder};

/// Wire clusters (verdict `wire`) with their member lists, in file order.
pub(crate) fn wire_clusters(ctx: &Ctx) -> CliResult<(Vec<std::path::PathBuf>, Vec<(WireDecision, ClusterRecord)>)> {
    let wire_path = ctx.upstream(files::WIRE_CLUSTERS, "filter")?;
    let clusters_path = ctx.upstream(files::CLUSTERS, "dedup")?;
    let decisions: Vec<WireDecision> = read_jsonl(&wire_path)?;
    let clusters: Vec<ClusterRecord> = read_jsonl(&clusters_path)?;
    let mut by_id: HashMap<String, ClusterRecord> = clusters.into_iter().map(|c| (c.cluster_id.clone(), c)).collect();
    let wire = decisions
        .into_iter()
        .filter(|d| d.verdict == Verdict::Wire)
        .map(|d| {
            let c = by_id.remove(&d.cluster_id).ok_or_else(|| {
                CliError::Input(format!("{} names unknown cluster {}", wire_path.display(), d.cluster_id))
            })?;
            Ok((d, c))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok((vec![wire_path, clusters_path], wire))
}

/// Resolves the dateline of every wire cluster.
pub fn georef(ctx: &Ctx) -> CliResult<()> {
    let paths = &ctx.cfg.paths;
    let gazetteer_path = required("gazetteer", &paths.gazetteer)?;
    let countries_path = required("countries", &paths.countries)?;
    let states_path = required("states", &paths.states)?;
    let ap_path = required("ap_cities", &paths.ap_cities)?;
    let notes_path = required("location_notes", &paths.location_notes)?;
    let bylines_path = optional("bylines", &paths.bylines)?;

    let (articles_path, articles) = ctx.ingested_articles()?;
    let (wire_inputs, wire) = wire_clusters(ctx)?;
    let regions = load_regions(countries_path, states_path)?;
    let gazetteer = load_gazetteer(gazetteer_path, &regions)?;
    let ap_table = ApCityTable::load(ap_path)?;
    let notes = LocationNotePatterns::load(notes_path)?;
    let bylines = bylines_path.map(load_bylines).transpose()?.unwrap_or_default();

    let by_id = index_articles(&articles);
    let ctx_geo = GeorefContext {
        gazetteer: &gazetteer,
        ap_table: &ap_table,
        notes: &notes,
        bylines: &bylines,
        config: ctx.cfg.georef,
    };
    let records: Vec<DatelineRecord> = wire
        .par_iter()
        .map(|(_, c)| Ok(DatelineRecord::new(&c.cluster_id, &georef_cluster(c, &by_id, &ctx_geo)?)))
        .collect::<CliResult<_>>()?;

    let out = ctx.path(files::DATELINES);
    write_jsonl(&out, &records)?;
    let mut manifest = ManifestBuilder::new("georef", &ctx.hash);
    manifest.input(&articles_path);
    for p in wire_inputs.iter().map(|p| p.as_path()).chain([gazetteer_path, countries_path, states_path, ap_path, notes_path]) {
        manifest.input(p);
    }
    if let Some(p) = bylines_path {
        manifest.input(p);
    }
    manifest
        .output(&out)
        .count("clusters", records.len())
        .count("with_coordinates", records.iter().filter(|r| r.wire_coordinates.is_some()).count())
        .count("with_location_note", records.iter().filter(|r| !r.wire_location_notes.is_empty()).count())
        .count(
            "city_without_coordinates",
            records.iter().filter(|r| !r.wire_city.is_empty() && r.wire_coordinates.is_none()).count(),
        )
        .count("no_dateline", records.iter().filter(|r| r.location_label().is_empty()).count())
        .count("gazetteer_entries", gazetteer.entries().len())
        .write(&ctx.out)?;
    Ok(())
}
