//! Serve the HTTP API on an ephemeral loopback port, send it one ranking
//! request, print the reply and shut down.
//!
//! For a long-running server use `rankbench serve --serve-port 8080`.

use rankbench::ahp::AhpOptions;
use rankbench::api::{router, AppState};
use rankbench::io::bundled;
use std::io::{Read, Write};

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let state = AppState::with_catalog(bundled::desk_catalog()?, AhpOptions::default());
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await?;
    let addr = listener.local_addr()?;
    let server = tokio::spawn(async move { axum::serve(listener, router(state)).await });
    println!("listening on http://{addr}/api/v1");

    let body = r#"{"weights":{"rnc":0.24562,"fut":0.16293,"avail":0.03241,"elast":0.02452,"srt":0.53452},"methods":["AHP","SAW"],"name":"sim2"}"#;
    let request = format!(
        "POST /api/v1/rank HTTP/1.1\r\nHost: {addr}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    );
    let response = tokio::task::spawn_blocking(move || -> std::io::Result<String> {
        let mut stream = std::net::TcpStream::connect(addr)?;
        stream.write_all(request.as_bytes())?;
        let mut response = String::new();
        stream.read_to_string(&mut response)?;
        Ok(response)
    })
    .await??;
    let (head, json) = response.split_once("\r\n\r\n").unwrap_or((&response, ""));
    println!("{}", head.lines().next().unwrap_or_default());
    let value: serde_json::Value = serde_json::from_str(json)?;
    println!("{}", serde_json::to_string_pretty(&value)?);

    server.abort();
    Ok(())
}
