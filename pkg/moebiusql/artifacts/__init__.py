from moebiusql.artifacts.artifact import Artifact, ArtifactFormat, PlotSpec
from moebiusql.artifacts.exporters import export_artifact, export_run_meta, write_json
from moebiusql.artifacts.importers import import_csv, import_json
