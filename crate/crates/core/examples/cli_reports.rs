//! Driving the `twist` front end in-process and reading its JSON.

use twisted_conjugacy::cli::run_capture;

fn main() {
    let (code, out, _) = run_capture([
        "twist", "--format", "json", "unipotent", "--type", "A2", "--chi", "[2,2]", "--count",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    println!("exit {code}, schema {}, verdict {}, count {}", v["schema"], v["verdict"], v["count"]);

    let (code, _, err) = run_capture(["twist", "unipotent", "--type", "A2", "--chi", "[0,1]"]);
    print!("exit {code}: {err}");

    let (code, out, _) = run_capture(["twist", "selftest"]);
    print!("selftest exit {code}\n{out}");
}
