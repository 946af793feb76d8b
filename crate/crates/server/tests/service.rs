use axum::body::Body;
use axum::http::{header, Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use ndagg_server::api::{router, ServiceConfig};
use serde_json::{json, Value};
use tower::ServiceExt;

const WORKED: &str = include_str!("../../core/fixtures/worked_example.json");
const TABLE: &str = include_str!("../../core/fixtures/collective_matrix.json");

fn app(dir: &tempfile::TempDir) -> Router {
    router(ServiceConfig {
        data_dir: dir.path().to_path_buf(),
        ..ServiceConfig::default()
    })
}

async fn call(app: &Router, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri).header(header::CONTENT_TYPE, "application/json");
    let req = match body {
        Some(v) => req.body(Body::from(v.to_string())).unwrap(),
        None => req.body(Body::empty()).unwrap(),
    };
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = serde_json::from_slice(&bytes).unwrap_or_else(|_| Value::String(String::from_utf8_lossy(&bytes).into()));
    (status, value)
}

fn worked() -> Value {
    serde_json::from_str(WORKED).unwrap()
}

#[tokio::test]
async fn health() {
    let dir = tempfile::tempdir().unwrap();
    let (status, body) = call(&app(&dir), Method::GET, "/healthz", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, "ok");
}

#[tokio::test]
async fn collective_endpoint() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir);
    let (status, body) = call(&app, Method::POST, "/api/v1/collective", Some(worked())).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, serde_json::from_str::<Value>(TABLE).unwrap());

    let single = json!({"alternatives": ["a"], "criteria": ["c1", "c2"], "experts": ["e"],
                        "evaluations": [[[0.3, 0.9]]]});
    let (status, body) = call(&app, Method::POST, "/api/v1/collective", Some(single)).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, json!([[[0.3], [0.9]]]));

    let mut ragged = worked();
    ragged["evaluations"][2][1].as_array_mut().unwrap().pop();
    let (status, body) = call(&app, Method::POST, "/api/v1/collective", Some(ragged)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["code"], "VALIDATION");
    assert_eq!(body["detail"]["path"], "evaluations[2][1]");
}

#[tokio::test]
async fn rank_endpoint() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir);
    let (status, body) = call(&app, Method::POST, "/api/v1/rank", Some(worked())).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["ranking"]["worstToBest"], json!(["a2", "a1", "a3", "a5", "a4"]));
    assert_eq!(body["ranking"]["bestToWorst"], json!(["a4", "a5", "a3", "a1", "a2"]));
    assert_eq!(body["ranking"]["ties"], json!([]));
    let codes: Vec<&str> = body["annotations"].as_array().unwrap().iter().map(|a| a["code"].as_str().unwrap()).collect();
    assert!(codes.contains(&"erratum"));
    assert_eq!(body["annotations"][0]["detail"]["printed"]["ranking"], json!(["a1", "a2", "a3", "a5", "a4"]));
}

#[tokio::test]
async fn incompatible_owa_is_422() {
    let dir = tempfile::tempdir().unwrap();
    let mut p = worked();
    p["order"] = json!({"kind": "WeightedLex", "tau": [1, 2, 3, 4, 5], "omega": [0.4, 0.6, 0, 0, 0]});
    p["aggregator"] = json!({"name": "ndimOWA", "omega": [0.4, 0.3, 0.2, 0.1]});
    let (status, body) = call(&app(&dir), Method::POST, "/api/v1/rank", Some(p)).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["code"], "VALIDATION");
    assert_eq!(body["detail"]["axiom"], "SV9");
}

#[tokio::test]
async fn all_equal_cube_is_one_tie_group() {
    let dir = tempfile::tempdir().unwrap();
    let p = json!({"alternatives": ["x", "y"], "criteria": ["c1", "c2"], "experts": ["e1", "e2"],
                   "evaluations": [[[0.5, 0.5], [0.5, 0.5]], [[0.5, 0.5], [0.5, 0.5]]],
                   "weights": [0.5, 0.5], "order": {"kind": "LexTau", "tau": [1, 2]}});
    let (status, body) = call(&app(&dir), Method::POST, "/api/v1/rank", Some(p)).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    assert_eq!(body["ranking"]["ties"], json!([["x", "y"]]));
    assert_eq!(body["ranking"]["notation"], "x = y");
}

#[tokio::test]
async fn sensitivity_endpoint() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir);
    let req = json!({"problem": worked(), "edits": [{"kind": "cube", "expert": 2, "alternative": 4, "criterion": 3, "value": 0.1}]});
    let (status, body) = call(&app, Method::POST, "/api/v1/sensitivity", Some(req)).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    assert_eq!(body["collectiveChanges"][0]["before"], json!([0.1, 0.1, 0.8, 0.8, 0.8]));
    assert_eq!(body["collectiveChanges"][0]["after"], json!([0.1, 0.1, 0.1, 0.8, 0.8]));
    assert!(!body["flipped"].as_array().unwrap().is_empty());

    let same = json!({"problem": worked(), "edits": ["expert=2,alt=4,crit=3,value=0.1"]});
    let (_, body2) = call(&app, Method::POST, "/api/v1/sensitivity", Some(same)).await;
    assert_eq!(body2["edited"], body["edited"]);

    let bad = json!({"problem": worked(), "edits": ["expert=2,alt=4"]});
    let (status, body) = call(&app, Method::POST, "/api/v1/sensitivity", Some(bad)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["detail"]["path"], "edits[0]");
}

#[tokio::test]
async fn catalog_lists_registry() {
    let dir = tempfile::tempdir().unwrap();
    let (status, body) = call(&app(&dir), Method::GET, "/api/v1/catalog", None).await;
    assert_eq!(status, StatusCode::OK);
    let kinds: Vec<&str> = body["orders"].as_array().unwrap().iter().map(|o| o["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["LexTau", "WeightedLex", "AggLex"]);
    let names: Vec<&str> = body["aggregators"].as_array().unwrap().iter().map(|o| o["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["ndimWeightedAverage", "ndimOWA", "lift"]);
}

#[tokio::test]
async fn problem_store_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir);
    let (status, _) = call(&app, Method::GET, "/api/v1/problems/worked", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = call(&app, Method::PUT, "/api/v1/problems/worked", Some(worked())).await;
    assert_eq!(status, StatusCode::OK);
    let (status, body) = call(&app, Method::GET, "/api/v1/problems/worked", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, worked());

    let mut changed = worked();
    changed["weights"] = json!([0.25, 0.25, 0.25, 0.25]);
    call(&app, Method::PUT, "/api/v1/problems/worked", Some(changed.clone())).await;
    let (_, body) = call(&app, Method::GET, "/api/v1/problems/worked", None).await;
    assert_eq!(body, changed);

    let req = Request::builder().method(Method::DELETE).uri("/api/v1/problems/worked").body(Body::empty()).unwrap();
    assert_eq!(app.clone().oneshot(req).await.unwrap().status(), StatusCode::NO_CONTENT);
    let (status, body) = call(&app, Method::GET, "/api/v1/problems/worked", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(body["code"], "NOT_FOUND");

    let long = "x".repeat(65);
    let (status, _) = call(&app, Method::PUT, &format!("/api/v1/problems/{long}"), Some(worked())).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn concurrent_writes_to_one_id_leave_a_complete_file() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir);
    let mut handles = Vec::new();
    for k in 0..16 {
        let app = app.clone();
        let mut p = worked();
        p["alternatives"][0] = json!(format!("a1-{k}"));
        handles.push(tokio::spawn(async move { call(&app, Method::PUT, "/api/v1/problems/shared", Some(p)).await.0 }));
    }
    for h in handles {
        assert_eq!(h.await.unwrap(), StatusCode::OK);
    }
    let (status, body) = call(&app, Method::GET, "/api/v1/problems/shared", None).await;
    assert_eq!(status, StatusCode::OK);
    assert!(body["alternatives"][0].as_str().unwrap().starts_with("a1-"));
}

#[tokio::test]
async fn size_and_trial_guards() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir);
    let p = 65;
    let big = json!({"alternatives": (0..p).map(|i| format!("a{i}")).collect::<Vec<_>>(), "criteria": ["c"], "experts": ["e"],
                     "evaluations": [(0..p).map(|_| vec![0.5]).collect::<Vec<_>>()]});
    let (status, body) = call(&app, Method::POST, "/api/v1/collective", Some(big)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["detail"]["path"], "alternatives");

    let req = json!({"order": {"kind": "LexTau", "tau": [1, 2]}, "samples": 100_001});
    let (status, body) = call(&app, Method::POST, "/api/v1/check-order", Some(req)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["detail"]["path"], "samples");

    let (status, body) = call(&app, Method::POST, "/api/v1/rank", Some(json!("not a problem"))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["code"], "VALIDATION");
}

#[tokio::test]
async fn check_order_and_classify_endpoints() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir);
    let req = json!({"order": {"kind": "WeightedLex", "tau": [1, 2, 3, 4], "omega": [0.4, 0.6, 0, 0]}, "samples": 200, "seed": 3});
    let (status, body) = call(&app, Method::POST, "/api/v1/check-order", Some(req)).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["holds"], false);
    let sv9 = body["reports"].as_array().unwrap().iter().find(|r| r["axiom"] == "SV9").unwrap();
    assert_eq!(sv9["witness"]["x"], json!([0.5, 0.6, 1.0, 1.0]));

    let req = json!({"aggregator": {"name": "ndimWeightedAverage", "omega": [0.25, 0.25, 0.5]},
                     "order": {"kind": "LexTau", "tau": [1, 2, 3]}, "samples": 200});
    let (status, body) = call(&app, Method::POST, "/api/v1/classify", Some(req)).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    assert_eq!(body["classification"]["idempotent"]["holds"], true);
    assert_eq!(body["classification"]["average"]["holds"], true);
}

#[tokio::test]
async fn responses_do_not_depend_on_request_order() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir);
    let (_, first) = call(&app, Method::POST, "/api/v1/rank", Some(worked())).await;
    let mut other = worked();
    other["weights"] = json!([0.1, 0.2, 0.3, 0.4]);
    call(&app, Method::POST, "/api/v1/rank", Some(other)).await;
    call(&app, Method::POST, "/api/v1/collective", Some(worked())).await;
    let (_, again) = call(&app, Method::POST, "/api/v1/rank", Some(worked())).await;
    assert_eq!(first, again);
}

#[tokio::test]
async fn cors_allows_the_configured_origin() {
    let dir = tempfile::tempdir().unwrap();
    let app = router(ServiceConfig {
        data_dir: dir.path().to_path_buf(),
        allowed_origins: vec!["http://workbench.test".into()],
    });
    let req = Request::builder()
        .method(Method::OPTIONS)
        .uri("/api/v1/rank")
        .header(header::ORIGIN, "http://workbench.test")
        .header(header::ACCESS_CONTROL_REQUEST_METHOD, "POST")
        .body(Body::empty())
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    assert_eq!(resp.headers()[header::ACCESS_CONTROL_ALLOW_ORIGIN], "http://workbench.test");

    let req = Request::builder()
        .method(Method::OPTIONS)
        .uri("/api/v1/rank")
        .header(header::ORIGIN, "http://elsewhere.test")
        .header(header::ACCESS_CONTROL_REQUEST_METHOD, "POST")
        .body(Body::empty())
        .unwrap();
    let resp = app.oneshot(req).await.unwrap();
    assert!(resp.headers().get(header::ACCESS_CONTROL_ALLOW_ORIGIN).is_none());
}
