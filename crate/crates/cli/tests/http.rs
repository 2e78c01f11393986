use ainfty::infgon::{BaseFamily, TriPresentation};
use ainfty_cli::serve::{router, Session};
use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => req.header("content-type", "application/json").body(Body::from(b.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    let bytes = res.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

fn tprime() -> Value {
    json!({"base": {"kind": "frozengap", "m0": -1, "n0": 1, "inner": []}, "flips": []})
}

#[tokio::test]
async fn default_state_is_zigzag() {
    let app = router(Session::default());
    let (status, v) = call(&app, "GET", "/state", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["classification"], "I");
    assert_eq!(v["frozen"], Value::Null);
    assert_eq!(v["window"], json!({"lo": -8, "hi": 8}));
    assert!(v["arcs"].as_array().unwrap().contains(&json!([-1, 1])));
    assert_eq!(v["seed"]["variables"], json!({"1": "x1", "2": "x2"}));

    let (_, small) = call(&app, "GET", "/state?lo=-2&hi=2", None).await;
    assert_eq!(small["arcs"], json!([[-2, 2], [-1, 1], [-1, 2]]));
    let (status, _) = call(&app, "GET", "/state?lo=3&hi=1", None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn mutate_a2_seed() {
    let app = router(Session::default());
    let (status, v) = call(&app, "POST", "/mutate", Some(json!({"vertex": 1}))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["variable"], "(1+x2)/x1");
    assert_eq!(v["state"]["seed"]["quiver"], json!({"vertices": [1, 2], "arrows": ["2->1"]}));
    let (status, _) = call(&app, "POST", "/mutate", Some(json!({"vertex": 7}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn flip_round_trip_restores_state() {
    let app = router(Session::default());
    let (_, before) = call(&app, "GET", "/state", None).await;
    let (status, v) = call(&app, "POST", "/flip", Some(json!({"arc": [-1, 1]}))).await;
    assert_eq!(status, StatusCode::OK);
    let produced = v["produced"].clone();
    assert_eq!(produced, json!([0, 2]));
    let (status, _) = call(&app, "POST", "/flip", Some(json!({"arc": produced}))).await;
    assert_eq!(status, StatusCode::OK);
    let (_, after) = call(&app, "GET", "/state", None).await;
    assert_eq!(after, before);
}

#[tokio::test]
async fn frozen_arc_conflicts() {
    let app = router(Session::default());
    let (status, v) = call(&app, "POST", "/load", Some(json!({"presentation": tprime(), "seed_rank": 3}))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["classification"], "III 0");
    assert_eq!(v["frozen"], json!([-1, 1]));
    assert_eq!(v["seed"]["variables"].as_object().unwrap().len(), 3);

    let (status, v) = call(&app, "POST", "/flip", Some(json!({"arc": [-1, 1]}))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert!(v["error"].as_str().unwrap().contains("frozen"));
    let (status, _) = call(&app, "POST", "/flip", Some(json!({"arc": [0, 5]}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn load_rejects_bad_input() {
    let app = router(Session::default());
    let bad = json!({"presentation": {"base": {"kind": "zigzag", "n0": 0, "variant": "left"}, "flips": [[0, 2]]}});
    let (status, _) = call(&app, "POST", "/load", Some(bad)).await;
    assert!(status.is_client_error());
    let (status, _) = call(&app, "POST", "/load", Some(json!({"presentation": tprime(), "seed_rank": 0}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (_, v) = call(&app, "GET", "/state", None).await;
    assert_eq!(v["classification"], "I");
}

#[tokio::test]
async fn hom_endpoint() {
    let app = router(Session::default());
    let (status, v) = call(&app, "GET", "/hom?x=(0,3)&y=(1,4)", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v, json!({"dim": 1, "kind": "forward"}));
    let (_, v) = call(&app, "GET", "/hom?x=%280%2C3%29&y=%28-2%2C0%29", None).await;
    assert_eq!(v, json!({"dim": 1, "kind": "backward"}));
    let (status, _) = call(&app, "GET", "/hom?x=junk&y=(1,4)", None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn state_matches_library() {
    let t = TriPresentation::from_base(BaseFamily::Fountain { v: 0 }).unwrap();
    let app = router(Session { presentation: t.clone(), ..Session::default() });
    let (_, v) = call(&app, "GET", "/state?lo=-4&hi=4", None).await;
    assert_eq!(v["arcs"], serde_json::to_value(t.arcs_in_window(-4, 4).unwrap()).unwrap());
    assert_eq!(v["classification"], t.classify().to_string());
    assert_eq!(v["quiver"], ainfty_cli::quiver_json(&t.quiver_of(-4, 4).unwrap()));
}
