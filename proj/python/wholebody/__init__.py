"""Whole-body (133-keypoint) pose annotation and evaluation tools."""

from wholebody._core import (  # noqa: F401
    AnnotationSet,
    Box,
    DatasetStats,
    DetectionCategory,
    DetectionMatch,
    DetectionRecord,
    DetectionSet,
    EvalParams,
    EvalReport,
    FaceBoxParams,
    FullBodyPose,
    HandBoxParams,
    HeatmapParams,
    HeatmapStack,
    ImageRecord,
    Keypoint,
    MatchResult,
    MergeParams,
    NmsParams,
    PartKind,
    PersonAnnotation,
    ProposalParams,
    RenderStyle,
    ScoredKeypoint,
    SigmaTable,
    ValidationReport,
    Violation,
    WholebodyError,
    assign_parts,
    category_keypoint_count,
    clip_to_image,
    compute_stats,
    decode,
    encode,
    evaluate,
    evaluate_part,
    face_box,
    format_stats_json,
    format_stats_table,
    hand_boxes,
    iou,
    keypoint_names,
    load_sigmas,
    match_image,
    merge_dataset,
    merge_person,
    oks,
    parse_detections,
    parse_ground_truth,
    parse_sigmas,
    part_name,
    part_range,
    per_part_report,
    pose_distance,
    pose_scale,
    read_heatmap_dump,
    render_svg,
    run_nms,
    schema_sidecar_json,
    skeleton,
    total_keypoints,
    validate_file,
    validate_ground_truth,
    write_annotations,
    write_detections,
    write_heatmap_dump,
)

__version__ = "0.1.0"
