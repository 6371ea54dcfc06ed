use std::io::Cursor;

use proptest::prelude::*;
use simplexflows::io::{config_to_string, parse_config, read_jsonl, write_jsonl, write_obj_frames, IoError};
use simplexflows::sampling;
use simplexflows_core::{ComplexKind, Trajectory};

#[test]
fn rejects_malformed_configs() {
    assert!(matches!(parse_config("{"), Err(IoError::Json(_))));
    assert!(matches!(parse_config(r#"{"kind":"M","n":2,"points":[[0,0],[1,0],[0,1]]}"#), Err(IoError::Invalid(_))));
    assert!(matches!(parse_config(r#"{"kind":"K","n":2,"points":[[0,0],[1,0],[0]]}"#), Err(IoError::Invalid(_))));
    assert!(matches!(parse_config(r#"{"kind":"K","n":2,"points":[[0,0],[1,0]]}"#), Err(IoError::Invalid(_))));
}

#[test]
fn obj_frames_list_every_edge() {
    let dir = tempfile::tempdir().unwrap();
    let mut g = sampling::rng(4);
    let mut traj = Trajectory::new();
    traj.push(0.0, sampling::random_l(&mut g, 3, sampling::LKind::Interior).points);
    assert_eq!(write_obj_frames(dir.path(), &traj).unwrap(), 1);
    let text = std::fs::read_to_string(dir.path().join("frame_0000.obj")).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 5);
    assert_eq!(text.lines().filter(|l| l.starts_with("l ")).count(), 10);
    let mut flat = Trajectory::new();
    flat.push(0.0, sampling::points(&mut g, 2, 3));
    assert!(write_obj_frames(dir.path(), &flat).is_err());
}

proptest! {
    #[test]
    fn config_text_round_trips(seed in any::<u64>(), n in 2usize..=5, l in any::<bool>()) {
        let mut g = sampling::rng(seed);
        let c = if l { sampling::random_l(&mut g, n, sampling::LKind::EdgeFace) } else { sampling::random_k(&mut g, n) };
        let back = parse_config(&config_to_string(&c)).unwrap();
        prop_assert_eq!(back.kind, if l { ComplexKind::L } else { ComplexKind::K });
        prop_assert_eq!(back.points, c.points);
    }

    #[test]
    fn jsonl_round_trips(seed in any::<u64>(), count in 2usize..10) {
        let mut g = sampling::rng(seed);
        let traj = Trajectory::sample(count, |_| Ok::<_, ()>(sampling::points(&mut g, 3, 4))).unwrap();
        let mut buf = Vec::new();
        write_jsonl(&mut buf, &traj).unwrap();
        prop_assert_eq!(read_jsonl(Cursor::new(buf)).unwrap(), traj);
    }
}
