use pyo3::prelude::*;
use pygnpgames::pygnpgames;

#[test]
fn python_smoke_script_runs_in_process() {
    pyo3::append_to_inittab!(pygnpgames);
    pyo3::prepare_freethreaded_python();
    Python::with_gil(|py| {
        let res = py.run_bound(include_str!("../python/smoke.py"), None, None);
        if let Err(e) = &res {
            e.print(py);
        }
        res.unwrap();
    });
}
