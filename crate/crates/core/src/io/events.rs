//! CSV event lists: `t,x,y,c,p`, one row per spike, sorted by `(t, c, y, x)`.
//! `t` is the one-based step number; `p` (polarity) is always 1.

use crate::error::{Error, Result};
use crate::types::{Provenance, SpikeTensor};

pub const EVENT_HEADER: &str = "t,x,y,c,p";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Event {
    pub t: usize,
    pub x: usize,
    pub y: usize,
    pub c: usize,
}

/// All spikes as events, in `(t, c, y, x)` order.
pub fn events(spikes: &SpikeTensor) -> Vec<Event> {
    let mut out = Vec::new();
    for t in 0..spikes.time_steps() {
        for c in 0..spikes.channels() {
            for y in 0..spikes.height() {
                for x in 0..spikes.width() {
                    if spikes.get(c, t, y, x) {
                        out.push(Event { t: t + 1, x, y, c });
                    }
                }
            }
        }
    }
    out
}

pub fn export_event_list(spikes: &SpikeTensor) -> String {
    let mut out = String::from(EVENT_HEADER);
    out.push('\n');
    for e in events(spikes) {
        out.push_str(&format!("{},{},{},{},1\n", e.t, e.x, e.y, e.c));
    }
    out
}

pub fn parse_event_list(text: &str) -> Result<Vec<Event>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == EVENT_HEADER => {}
        other => {
            return Err(Error::MalformedHeader(format!(
                "expected event header '{EVENT_HEADER}', found {other:?}"
            )))
        }
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(n, line)| {
            let fields: Vec<usize> = line
                .split(',')
                .map(|f| f.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::MalformedHeader(format!("event row {}: {e}", n + 1)))?;
            match fields.as_slice() {
                &[t, x, y, c, 1] if t >= 1 => Ok(Event { t, x, y, c }),
                _ => Err(Error::MalformedHeader(format!("event row {}: '{line}'", n + 1))),
            }
        })
        .collect()
}

/// Rebuilds a tensor of the given shape from an event list.
pub fn tensor_from_events(
    events: &[Event],
    time_steps: usize,
    width: usize,
    height: usize,
    provenance: Provenance,
) -> Result<SpikeTensor> {
    let mut out = SpikeTensor::zeros(time_steps, width, height, provenance);
    for e in events {
        if e.t == 0 || e.t > time_steps || !out.contains(e.c, e.y, e.x) {
            return Err(Error::OutOfBounds(format!("{e:?}")));
        }
        out.set(e.c, e.t - 1, e.y, e.x, true);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{ChannelSet, EncoderConfig};

    fn tensor() -> SpikeTensor {
        SpikeTensor::zeros(8, 3, 2, Provenance::new(ChannelSet::Rgb, &EncoderConfig::default()))
    }

    #[test]
    fn empty_tensor_is_header_only() {
        assert_eq!(export_event_list(&tensor()), "t,x,y,c,p\n");
    }

    #[test]
    fn single_spike_row() {
        let mut s = tensor();
        s.set(0, 3, 0, 0, true);
        assert_eq!(export_event_list(&s), "t,x,y,c,p\n4,0,0,0,1\n");
    }

    #[test]
    fn ordering_and_round_trip() {
        let mut s = tensor();
        s.set(2, 0, 1, 2, true);
        s.set(0, 0, 1, 0, true);
        s.set(1, 5, 0, 1, true);
        s.set(0, 5, 0, 2, true);
        let text = export_event_list(&s);
        assert_eq!(text, "t,x,y,c,p\n1,0,1,0,1\n1,2,1,2,1\n6,2,0,0,1\n6,1,0,1,1\n");
        let parsed = parse_event_list(&text).unwrap();
        assert_eq!(parsed.len(), s.total_spikes());
        let back = tensor_from_events(&parsed, 8, 3, 2, *s.provenance()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(parse_event_list("x,y\n").is_err());
        assert!(parse_event_list("t,x,y,c,p\n1,0,0,0,0\n").is_err());
        assert!(parse_event_list("t,x,y,c,p\n0,0,0,0,1\n").is_err());
        let ev = [Event { t: 9, x: 0, y: 0, c: 0 }];
        assert!(tensor_from_events(&ev, 8, 3, 2, *tensor().provenance()).is_err());
    }
}
